//! Feynman checkers: a discrete-time quantum walk on the 1+1 dimensional
//! lattice whose continuum limit is the Dirac equation.
//!
//! The crate computes the walk amplitudes by several independent routes
//! and verifies the identities connecting them:
//!
//! * [`exact`] — integer dynamic programming on the unit lattice, the
//!   ground-truth oracle (arbitrary precision).
//! * [`dp`] — floating-point dynamic programming for arbitrary mass and
//!   lattice step, with absorption barriers and chirality sums.
//! * [`closed_form`] — alternating binomial sums for the same amplitudes,
//!   evaluated exactly in big integers; Young-diagram parity counts.
//! * [`spectral`] — Fourier-integral evaluation (periodic trapezoid with
//!   node doubling), antiparticle values on white sites, and plane-wave
//!   dispersion.
//! * [`specfun`] — self-contained Airy, Bessel and complete elliptic
//!   functions used by the asymptotic formulas.
//! * [`asympt`] — large-time asymptotics between / around / outside the
//!   distribution peaks, the limiting distribution, continuum-limit
//!   propagators and the lattice-step prescription algorithm.
//! * [`gauge`] — amplitudes in an external field of edge weights.
//! * [`pair`] — antisymmetrized two-particle amplitudes.
//! * [`loop_gas`] — exact enumeration of edge-disjoint loop configurations
//!   on small tori (the combinatorial route to antiparticle values).
//!
//! The `fchk` binary exposes each capability as a subcommand; the
//! `examples/` directory holds one runnable example per capability.

pub mod asympt;
pub mod closed_form;
pub mod dp;
pub mod error;
pub mod exact;
pub mod gauge;
pub mod loop_gas;
pub mod output;
pub mod pair;
pub mod params;
pub mod specfun;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use params::{AbsorptionSet, AmplitudePair, LatticeParams, Site};
