#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod algcore;
pub mod cyccat;
pub mod cychom;
pub mod exactla;
pub mod hhdecomp;
