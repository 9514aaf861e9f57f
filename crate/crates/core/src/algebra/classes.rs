use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroupTable;
use crate::error::{Error, Result};

/// Maximum number of conjugacy classes representable in a [`ClassMask`].
pub const MAX_CLASSES: usize = 128;

/// A set of conjugacy-class indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassMask(pub u128);

impl ClassMask {
    pub const EMPTY: ClassMask = ClassMask(0);

    pub fn single(i: usize) -> Self {
        ClassMask(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn union(self, o: ClassMask) -> ClassMask {
        ClassMask(self.0 | o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        let mut m = ClassMask::EMPTY;
        it.into_iter().for_each(|i| m.insert(i));
        m
    }
}

impl fmt::Display for ClassMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Partition of a group into conjugacy classes; class 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyDecomposition {
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl ConjugacyDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    /// Elements of the union of the classes in `m`, sorted.
    pub fn elements(&self, m: ClassMask) -> Vec<usize> {
        let mut v: Vec<usize> = m.iter().flat_map(|i| self.classes[i].iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

/// Conjugacy classes, numbered with class 0 the identity.
///
/// The remaining classes are ordered by the family's conventional key when
/// the group has one (cycle type for symmetric groups, rotation angle for
/// dihedral groups, reflections first) and by `(size, minimal element)`
/// otherwise; ties fall back to the minimal element.
pub fn conjugacy_classes(g: &FiniteGroupTable) -> Result<ConjugacyDecomposition> {
    let n = g.order();
    let gens = g.generators();
    let mut class_of = vec![u32::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if class_of[s] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        class_of[s] = id;
        let mut members = vec![s];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &h in &gens {
                let y = g.conj(h, x);
                if class_of[y] == u32::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }
    if raw.len() > MAX_CLASSES {
        return Err(Error::SizeGuard(format!("{} conjugacy classes exceed the limit of {MAX_CLASSES}", raw.len())));
    }
    let mut order: Vec<usize> = (1..raw.len()).collect();
    order.sort_by(|&a, &b| {
        let (ma, mb) = (raw[a][0], raw[b][0]);
        match (g.order_key(ma), g.order_key(mb)) {
            (Some(ka), Some(kb)) => ka.cmp(kb).then(ma.cmp(&mb)),
            _ => (raw[a].len(), ma).cmp(&(raw[b].len(), mb)),
        }
    });
    order.insert(0, 0);
    let mut classes = Vec::with_capacity(raw.len());
    let mut renum = vec![0u32; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        renum[old] = new as u32;
        classes.push(std::mem::take(&mut raw[old]));
    }
    let class_of = class_of.into_iter().map(|c| renum[c as usize]).collect();
    Ok(ConjugacyDecomposition { class_of, classes })
}

/// Multiplication table of conjugacy classes as class-index bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassProductTable {
    c: usize,
    entries: Vec<ClassMask>,
    inverse: Vec<usize>,
    sizes: Vec<usize>,
}

impl ClassProductTable {
    pub fn new(g: &FiniteGroupTable, dec: &ConjugacyDecomposition) -> Self {
        let c = dec.len();
        let mut entries = vec![ClassMask::EMPTY; c * c];
        for i in 0..c {
            let r = dec.representative(i);
            for j in 0..c {
                let mut m = ClassMask::EMPTY;
                for &y in dec.class(j) {
                    m.insert(dec.class_of(g.mul(r, y)));
                }
                entries[i * c + j] = m;
            }
        }
        let inverse = (0..c).map(|i| dec.class_of(g.inv(dec.representative(i)))).collect();
        ClassProductTable { c, entries, inverse, sizes: dec.sizes() }
    }

    pub fn num_classes(&self) -> usize {
        self.c
    }

    pub fn get(&self, i: usize, j: usize) -> ClassMask {
        self.entries[i * self.c + j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn all_self_inverse(&self) -> bool {
        (0..self.c).all(|i| self.inverse[i] == i)
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of elements in the union of the classes in `m`.
    pub fn size_of(&self, m: ClassMask) -> usize {
        m.iter().map(|i| self.sizes[i]).sum()
    }

    /// Classes meeting the product of the two unions.
    pub fn product(&self, a: ClassMask, b: ClassMask) -> ClassMask {
        let mut out = ClassMask::EMPTY;
        for i in a.iter() {
            for j in b.iter() {
                out = out.union(self.get(i, j));
            }
        }
        out
    }

    /// Product of a union of classes with a single class.
    pub fn product_class(&self, a: ClassMask, j: usize) -> ClassMask {
        a.iter().fold(ClassMask::EMPTY, |acc, i| acc.union(self.get(i, j)))
    }

    /// Classes meeting the set of commutators `[a, b]`.
    pub fn commutator_classes(&self) -> ClassMask {
        (0..self.c).fold(ClassMask::EMPTY, |acc, i| acc.union(self.get(i, self.inverse[i])))
    }

    /// Classes making up the derived subgroup.
    pub fn derived_classes(&self) -> ClassMask {
        let mut m = self.commutator_classes().union(ClassMask::single(0));
        loop {
            let next = m.union(self.product(m, m));
            if next == m {
                return m;
            }
            m = next;
        }
    }

    /// True when every element of the derived subgroup is a single commutator.
    pub fn commutator_length_one(&self) -> bool {
        self.commutator_classes().union(ClassMask::single(0)) == self.derived_classes()
    }
}

pub fn class_product_table(g: &FiniteGroupTable, dec: &ConjugacyDecomposition) -> ClassProductTable {
    ClassProductTable::new(g, dec)
}

/// The derived subgroup `[G, G]` as a sorted element list.
pub fn commutator_subgroup(g: &FiniteGroupTable) -> Result<Vec<usize>> {
    let dec = conjugacy_classes(g)?;
    let t = ClassProductTable::new(g, &dec);
    Ok(dec.elements(t.derived_classes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let g = FiniteGroupTable::symmetric(3).unwrap();
        let dec = conjugacy_classes(&g).unwrap();
        assert_eq!(dec.sizes(), vec![1, 3, 2]);
        let t = class_product_table(&g, &dec);
        assert_eq!(t.get(1, 1), ClassMask::from_indices([0, 2]));
        assert_eq!(t.get(1, 2), ClassMask::single(1));
        assert_eq!(t.get(2, 2), ClassMask::from_indices([0, 2]));
        assert_eq!(t.size_of(t.derived_classes()), 3);
        assert!(t.commutator_length_one());
    }

    #[test]
    fn mask_iteration() {
        let m = ClassMask::from_indices([3, 0, 127]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 3, 127]);
        assert_eq!(m.to_string(), "{0,3,127}");
    }
}
