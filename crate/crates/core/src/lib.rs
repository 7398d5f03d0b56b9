//! Laboratory for the REESSE1+ key transform and the continued-fraction
//! attack against it.
//!
//! Arithmetic is exact throughout: every filter decision is an integer
//! comparison, so reports are reproducible byte for byte.

pub mod attack;
pub mod contfrac;
pub mod decimal;
pub mod fixtures;
pub mod keys;
pub mod numtheory;
pub mod par;
pub mod reproduce;
pub mod study;
