//! Quotients of two-generator numerical semigroups.
//!
//! A quotient `<a,b>/d` is the set of non-negative integers `x` with
//! `d*x` in the semigroup generated by `a` and `b`. This crate computes its
//! classical invariants (multiplicity, minimal generators, pseudo-Frobenius
//! numbers, Frobenius number, genus) from continued fraction data of `m/d`,
//! and checks them against an explicit membership table.
//!
//! Modules, from the bottom up:
//!
//! * [`exactmath`]: exact rationals, floor and ceiling continued fractions,
//!   semiconvergents and best rational approximations.
//! * [`ostrowski`]: digit expansions of integers and of `{n*alpha}` for a
//!   rational `alpha`, minimal points of Kronecker sequences, counting.
//! * [`lattice`]: the lattice `{(x,y) : ax+by = 0 mod d}` and its minimal
//!   and maximal points in rectangles.
//! * [`oracle`]: brute-force numerical semigroups.
//! * [`invariants`]: the fast closed-form invariants.
//! * [`reverse`]: reconstruction of every `(a,b,d)` with a given set of
//!   minimal generators.

pub mod exactmath;
pub mod invariants;
pub mod lattice;
pub mod oracle;
pub mod ostrowski;
pub mod reverse;
