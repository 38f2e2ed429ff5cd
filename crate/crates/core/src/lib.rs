//! Local normal zeta functions of Heisenberg groups over rings of
//! integers at unramified primes: exact closed forms from Dyck-word
//! and Igusa-function sums, together with brute-force lattice counts
//! and functional-equation checks to test them against.

pub mod combinat;
pub mod counting;
pub mod error;
pub mod funceq;
pub mod igusa;
pub mod oracle;
pub mod zeta;
pub mod ratfunc;

pub use error::{Error, Result};
