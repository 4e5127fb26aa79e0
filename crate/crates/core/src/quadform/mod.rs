//! Positive definite binary quadratic forms and the class groups they model.

pub mod enumerate;
pub mod form;
pub mod group;

pub use enumerate::{class_number, enumerate_reduced, enumerate_reduced_naive};
pub use form::{compose, compose_unreduced, inverse, pow, reduce, QuadForm};
pub use group::{
    class_group, group_structure, multiplication_table, two_rank_from_d, two_rank_genus,
    ClassGroup,
};
