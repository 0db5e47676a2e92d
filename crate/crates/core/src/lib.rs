//! Simulators for two macroscopic machine-models of quantum measurement,
//! together with the exact quantum calculations they are checked against.
//!
//! The first machine ([`sqm`]) is a point particle on a unit sphere measured
//! by a breakable elastic band stretched along a diameter: the particle falls
//! orthogonally onto the band, the band snaps at an uncontrollable point, and
//! the surviving fragment drags the particle to one of the two poles. With a
//! uniformly breakable band the outcome frequencies reproduce the spin-1/2
//! Born probabilities `cos²(γ/2)` / `sin²(γ/2)`; an ε-parameterized band
//! interpolates continuously between that quantum regime and a deterministic
//! classical one.
//!
//! The second machine ([`bell`]) is a uniform elastic band with an
//! experimenter at each end. Pulling both ends at once breaks the band and
//! *creates* a correlation between the fragment lengths; the resulting CHSH
//! statistic reaches the algebraic maximum 4, while a band that was already
//! broken before the experiment (correlations merely discovered, not created)
//! stays at the classical bound 2. The quantum singlet, sitting in between at
//! 2√2, is computed and sampled exactly in [`quantum`].
//!
//! [`stats`] supplies the binomial z-checks and the Kolmogorov–Smirnov
//! uniformity test used to verify every probabilistic claim, and [`rng`]
//! fixes the per-trial random-stream discipline that makes all Monte Carlo
//! totals independent of thread count.

pub mod bell;
pub mod error;
pub mod quantum;
pub mod rng;
pub mod sqm;
pub mod stats;

pub use error::{Error, Result};
