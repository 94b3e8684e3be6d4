//! First passage percolation on the complete graph `K_n` with i.i.d. edge
//! weights, in the weak-disorder regime.
//!
//! The crate has five pieces:
//!
//! * [`models`] — edge-weight distribution families (`Z^{s_n}` powers of a
//!   base law, the log-Fréchet family `e^{-(E/ρ)^{1/α}}`, and `E^{-γ}`),
//!   their CDFs, quantiles, extreme-value scale `u_n`, and the effective
//!   disorder parameter `s_n`.
//! * [`simulator`] — deterministic lazy-weight simulation of `K_n`:
//!   optimal weight `W_n`, hopcount `H_n`, budgeted path counts `N_k(b)`,
//!   hop-constrained optima, and brute-force oracles at small `n`.
//! * [`census`] — exact, asymptotic, and upper-bound counts of ordered
//!   pairs of `k`-edge paths between two fixed vertices sharing exactly
//!   `l` edges.
//! * [`convolution`] — the `k`-fold convolution CDF deep in its lower
//!   tail: closed forms, conditional Monte Carlo, bracketed grid
//!   convolution, and certified sandwich bounds.
//! * [`predictor`] — closed-form constants and per-`(model, n)`
//!   predictions for `W_n` and `H_n`, including the Gumbel limit
//!   transform for the bounded-hopcount regime.

pub mod census;
pub mod convolution;
pub mod models;
pub mod predictor;
pub mod rng;
pub mod simulator;
pub mod special;
pub mod stats;
