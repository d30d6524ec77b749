//! Cyclic, periodic and negative cyclic homology of cyclic modules.

mod excision;
mod free;
mod hp;
mod ladder;
mod minus;
mod sbi;
mod window;

pub use excision::{mayer_vietoris, ExcisionError, ExcisionReport, MvNode, MvPosition};
pub use free::{free_vanishing, FreeVanishingReport};
pub use hp::{
    hp, hp_map, hp_of_ladder, min_hp_depth, HpError, HpMap, HpReport, ParityMap, ParityReport,
    DEFAULT_WINDOW,
};
pub use ladder::{
    apply_degreewise, descending_homology, hochschild_homology, shift_down, BlockLadder, Blocks,
    HcLadder, ParityTower,
};
pub use minus::{hc_minus, norm_map_check, HcMinusReport, MinusDegree, NormMapCheck};
pub use sbi::{sbi, sbi_of_ladder, shift_up, NodeKind, SbiNode, SbiReport};
pub use window::{cp_window, BicomplexWindow, ColumnMaps, TotLayout};
