//! Exact computations for affine isometry groups of flat pseudo-Riemannian
//! spaces: quadratic spaces and Witt frames, admissibility of affine
//! isometries, holonomy and block forms, fixed-point certificates,
//! centralizer-based homogeneity verdicts, low-dimensional classification,
//! and isometric realisations of 2-step nilpotent groups.
//!
//! All arithmetic is over the rationals; nothing is rounded.
//!
//! ```
//! use flathom::catalog;
//! use flathom::centralizer::{homogeneity_verdict, Verdict};
//! use flathom::fixpoint::{dimension_diagnostic, BoundStatus};
//!
//! let p = catalog::example_14();
//! assert!(p.admissibility().unwrap().all_pass());
//! assert_eq!(p.u_zero().dim(), 5);
//! assert_eq!(homogeneity_verdict(&p).verdict, Verdict::Transitive);
//! let d = dimension_diagnostic(&p).unwrap();
//! assert_eq!(d.status, BoundStatus::Attained { s: 7, n: 14 });
//! ```

pub mod error;
pub mod exactlin;
pub mod quadspace;
pub mod isogrp;
pub mod catalog;
pub mod centralizer;
pub mod fixpoint;
pub mod lowdim;
pub mod nilrep;
pub mod cli;

pub use error::{Error, Result};
