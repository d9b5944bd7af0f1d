//! Exact and numeric tools for computing the SL(2,C) Casson invariant of
//! knots: A-polynomials, Dehn surgery curves and the Whitehead link
//! character variety.

pub mod poly;
pub mod surgery;
pub mod elimination;
pub mod invariants;
pub mod whitehead;
