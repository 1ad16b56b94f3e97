//! Verification of the stabilizer and root-inequality statements.

pub mod catalog;
pub mod invariance;
pub mod lemmas;
pub mod normal_form;
pub mod oracle;
pub mod subgroup;
pub mod verify;
