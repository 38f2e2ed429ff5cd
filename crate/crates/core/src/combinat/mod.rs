//! Finite combinatorics: partitions, Dyck words, Gaussian multinomials,
//! weak orderings and chains, ordered set partitions.

mod dyck;
mod partition;
mod perm;
mod qbinom;
mod setpart;

pub use dyck::{
    block_decomposition, dyck_of_pair, dyck_words, jump_sets, pair_decomposition, satisfies_chain,
    successive_differences, support_in_block, BlockDecomposition, DyckWord,
};
pub use partition::{dual_partition, partitions_below, partitions_below_of_size, partitions_in_box, Partition};
pub use perm::{
    chains, descents, is_permutation, permutation_stats, permutations, phi, phi_inverse, weak_orderings,
    Chain, Perm, PermStats, Subset, WeakOrdering,
};
pub use qbinom::{
    gaussian_binomial, gaussian_binomial_at, gaussian_binomial_coeffs, gaussian_multinomial,
    gaussian_multinomial_at, multinomial_count, reflect_subset, YSpec,
};
pub use setpart::{
    compatible_partitions, compositions, partition_of, phi_a, split_by_partition, DecompType,
    OrderedSetPartition,
};

use num_bigint::BigInt;

/// `beta(lambda) = binom(n, J(lambda))` at `Y = 1`: the number of
/// `ell in N_0^n` whose sorted rearrangement is `lambda`.
pub fn beta(lambda: &Partition) -> BigInt {
    multinomial_count(lambda.len(), &lambda.drop_set())
}
