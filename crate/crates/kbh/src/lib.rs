//! Kauffman bracket homology.
//!
//! Framed and oriented link homology theories built on the cube of Kauffman
//! states, together with the classical bracket polynomial and Khovanov
//! homology for cross-checking.

pub mod intlinalg;
pub mod poly;
pub mod diagram;
pub mod bracket;
pub mod twocomplex;
pub mod framedcube;
pub mod oriented;
pub mod khovanov;
pub mod report;
pub mod verify;
