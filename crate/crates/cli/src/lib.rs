pub mod commands;
pub mod corpus;
pub mod format;
pub mod random;
pub mod report;
pub mod scenario;
