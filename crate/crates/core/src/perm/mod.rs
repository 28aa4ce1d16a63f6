//! Permutations and permutation groups.

mod blocks;
mod chain;
mod group;
mod permutation;
pub mod primes;
mod shape;
mod sylow;

pub use blocks::{is_primitive, minimal_block_system, Primitivity};
pub use group::{closure_elements, subgroup_from_elements, GroupDocument, PermGroup, DEFAULT_ELEMENT_CAP};
pub use permutation::Permutation;
pub use primes::{group_prime_divisors, prime_divisors};
pub use shape::{
    find_subgroups_by_shape, is_abelian, is_alternating4, is_cyclic, is_dihedral,
    is_elementary_abelian, is_klein_four, is_symmetric4, FoundSubgroup, ShapeKind, ShapeSearch,
    SubgroupShape,
};
pub use sylow::sylow_subgroup;

