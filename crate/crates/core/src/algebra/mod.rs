//! Finite groups, conjugacy classes, quandles, words and partitions.

mod classes;
mod group;
mod length;
mod partition;
mod permutation;
mod quandle;
mod word;

pub use classes::{
    class_product_table, commutator_subgroup, conjugacy_classes, ClassMask, ClassProductTable, ConjugacyDecomposition,
    MAX_CLASSES,
};
pub use group::{FiniteGroupTable, GroupJson, DENSE_LIMIT, TABLE_LIMIT};
pub use length::{generic_length_series, LengthSeries};
pub(crate) use partition::UnionFind;
pub use partition::{enumerate_set_partitions, integer_partition_multiplicity, integer_partitions, SetPartition};
pub use permutation::Permutation;
pub use quandle::{
    conjugation_solution, reflection_solution, transposition_pairs, transposition_solution, QuandleJson,
    QuandleSolution,
};
pub use word::Word;

/// `S_d` as a group table.
pub fn make_symmetric_group(d: usize) -> crate::Result<FiniteGroupTable> {
    FiniteGroupTable::symmetric(d)
}

/// `D_d` as a group table.
pub fn make_dihedral_group(d: usize) -> crate::Result<FiniteGroupTable> {
    FiniteGroupTable::dihedral(d)
}

/// Indices of the transpositions of a symmetric group, in lexicographic pair order.
pub fn transposition_elements(g: &FiniteGroupTable) -> Vec<usize> {
    let d = g.symmetric_degree().unwrap_or(0);
    transposition_pairs(d).into_iter().map(|(i, j)| Permutation::transposition(d, i, j).rank()).collect()
}

/// Indices of the reflections of a dihedral group.
pub fn reflection_elements(g: &FiniteGroupTable) -> Vec<usize> {
    let d = g.dihedral_degree().unwrap_or(0);
    (d..2 * d).collect()
}
