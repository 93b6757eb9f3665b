//! Generators and relations of the invariant rings `F_q[V + V*]^G` for
//! `G` one of the upper unitriangular group `U_n`, the upper triangular
//! group `B_n`, `SL_n(F_q)` or `GL_n(F_q)`, together with a brute-force
//! linear-algebra oracle and the bigraded Hilbert series of the `U_n`
//! and `B_n` invariant rings.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf`] — exact arithmetic in `F_q` for prime powers `q = p^e`;
//! * [`mpoly`] — sparse bigraded polynomials in `x_1..x_n, y_1..y_n`;
//! * [`groups`] — the matrix groups, their action on the polynomial
//!   ring, the `*` involution, and orbit enumeration;
//! * [`invgen`] — the named invariants `u_j`, `f_i`, `f_i*`, the Dickson
//!   sums `c_{s,t}`, and the Moore-type determinants `d_{k,i}`;
//! * [`presentation`] — abstract generator/relation presentations, kernel
//!   verification, elimination-structure and minimality checks;
//! * [`relcheck`] — randomized checks of the determinant identity over
//!   arbitrary commutative rings and its polynomial specialization;
//! * [`hilbert`] — the bigraded Hilbert series as factor lists and their
//!   truncated expansions;
//! * [`oracle`] — per-bidegree invariant dimensions by exact row
//!   reduction, subalgebra spans, and the `SL_2(F_3)` counterexample;
//! * [`cli`] — the `invar` command-line driver.

pub mod cli;
pub mod error;
pub mod gf;
pub mod groups;
pub mod hilbert;
pub mod invgen;
pub mod mpoly;
pub mod oracle;
pub mod presentation;
pub mod relcheck;

pub use error::Error;
