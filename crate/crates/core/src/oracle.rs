//! Brute-force reference implementations over explicit multiplication tables.
//!
//! Everything here is classification-agnostic: no closed-form knowledge about
//! unit groups or automorphism parameterizations leaks in. The rest of the
//! crate is validated against these routines.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::residue::ModulusContext;

/// A finite commutative-or-not multiplication table with identity.
/// Associativity and the identity law are machine-checked on construction.
#[derive(Debug, Clone)]
pub struct MulTable {
    n: usize,
    table: Vec<u16>,
    identity: u16,
    commutative: bool,
    absorbing: Option<u16>,
}

impl MulTable {
    pub fn from_op(n: usize, op: impl Fn(usize, usize) -> usize + Sync) -> Result<Self> {
        assert!(n > 0 && n <= u16::MAX as usize + 1, "table size {n} out of range");
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = op(a, b);
                assert!(v < n, "operation escapes the carrier");
                table[a * n + b] = v as u16;
            }
        }
        let identity = (0..n)
            .find(|&i| (0..n).all(|x| table[i * n + x] as usize == x && table[x * n + i] as usize == x))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        // full O(n^3) associativity scan, parallel over the first operand
        let assoc_failure = (0..n).into_par_iter().find_any(|&a| {
            (0..n).any(|b| {
                let ab = table[a * n + b] as usize;
                (0..n).any(|c| {
                    let bc = table[b * n + c] as usize;
                    table[ab * n + c] != table[a * n + bc]
                })
            })
        });
        if let Some(a) = assoc_failure {
            return Err(Error::GroupAxiom(format!(
                "associativity fails at some triple starting with {a}"
            )));
        }
        let commutative = (0..n).all(|a| (a + 1..n).all(|b| table[a * n + b] == table[b * n + a]));
        let absorbing = (0..n)
            .find(|&z| (0..n).all(|x| table[z * n + x] as usize == z && table[x * n + z] as usize == z))
            .map(|z| z as u16);
        Ok(Self {
            n,
            table,
            identity: identity as u16,
            commutative,
            absorbing,
        })
    }

    /// The multiplicative monoid (ℤ/pᵉℤ, ·); element i is the residue i.
    pub fn monoid(ctx: ModulusContext) -> Self {
        let m = ctx.modulus();
        Self::from_op(m as usize, |a, b| {
            ((a as u64 * b as u64) % m) as usize
        })
        .expect("modular multiplication is a monoid")
    }

    /// The unit group, together with the residue value of each element index.
    pub fn unit_group(ctx: ModulusContext) -> (Self, Vec<u64>) {
        let values: Vec<u64> = ctx.units().iter().map(|u| u.value()).collect();
        let mut index_of = vec![usize::MAX; ctx.modulus().max(1) as usize];
        for (i, &v) in values.iter().enumerate() {
            index_of[v as usize] = i;
        }
        let m = ctx.modulus();
        let table = Self::from_op(values.len(), |a, b| {
            index_of[((values[a] as u128 * values[b] as u128) % m.max(1) as u128) as usize]
        })
        .expect("unit multiplication is a group");
        (table, values)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn absorbing(&self) -> Option<usize> {
        self.absorbing.map(|z| z as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    /// Least k ≥ 1 with x^k = identity; errors on non-invertible elements.
    pub fn brute_order(&self, x: usize) -> Result<u64> {
        let mut cur = x;
        for k in 1..=self.n as u64 {
            if cur == self.identity as usize {
                return Ok(k);
            }
            cur = self.mul(cur, x);
        }
        Err(Error::NonUnit {
            value: x as u64,
            modulus: self.n as u64,
        })
    }

    /// Elements commuting with everything.
    pub fn brute_center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// Closure of S (with the empty product, i.e. the identity) equals the
    /// full carrier?
    pub fn brute_generates(&self, set: &[usize]) -> bool {
        self.closure(set).len() == self.n
    }

    /// Submonoid generated by `set`, as a sorted index list.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::with_capacity(self.n);
        let push = |x: usize, seen: &mut Vec<bool>, stack: &mut Vec<usize>| {
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        };
        push(self.identity as usize, &mut seen, &mut stack);
        for &s in set {
            push(s, &mut seen, &mut stack);
        }
        let mut frontier = 0;
        while frontier < stack.len() {
            let x = stack[frontier];
            frontier += 1;
            for &s in set {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
                let y = self.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        stack.sort_unstable();
        stack
    }

    /// Invariant fingerprint used to prune automorphism candidates: image of
    /// x must match x on invertibility, order, idempotency, and annihilator
    /// size.
    fn profile(&self, x: usize) -> (bool, u64, bool, u32) {
        let order = self.brute_order(x).unwrap_or(0);
        let idempotent = self.mul(x, x) == x;
        let annihilator = match self.absorbing {
            Some(z) => (0..self.n)
                .filter(|&y| self.mul(x, y) == z as usize)
                .count() as u32,
            None => 0,
        };
        (order != 0, order, idempotent, annihilator)
    }

    /// All automorphisms of the table, as permutation maps (index → index),
    /// sorted lexicographically.
    ///
    /// Candidates are generator images with matching invariant profiles; each
    /// assignment is extended along products and then subjected to a full
    /// O(n²) homomorphism check — no shortcuts on the final check.
    pub fn brute_automorphisms(&self, gens: &[usize]) -> Result<Vec<Vec<u16>>> {
        if !self.brute_generates(gens) {
            return Err(Error::InvalidParameter(
                "generating set does not generate the table".into(),
            ));
        }
        let candidate_lists: Vec<Vec<u16>> = gens
            .iter()
            .map(|&g| {
                let p = self.profile(g);
                (0..self.n)
                    .filter(|&x| self.profile(x) == p)
                    .map(|x| x as u16)
                    .collect()
            })
            .collect();
        let mut assignments: Vec<Vec<u16>> = vec![Vec::new()];
        for list in &candidate_lists {
            assignments = assignments
                .into_iter()
                .flat_map(|prefix| {
                    list.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        let mut automorphisms: Vec<Vec<u16>> = assignments
            .par_iter()
            .filter_map(|images| self.try_extend(gens, images))
            .collect();
        automorphisms.sort_unstable();
        Ok(automorphisms)
    }

    /// Extends generator images to a full map along products; returns the map
    /// if it is a bijective homomorphism.
    fn try_extend(&self, gens: &[usize], images: &[u16]) -> Option<Vec<u16>> {
        let n = self.n;
        const UNSET: u16 = u16::MAX;
        let mut map = vec![UNSET; n];
        let mut stack = Vec::with_capacity(n);
        map[self.identity as usize] = self.identity;
        stack.push(self.identity as usize);
        for (&g, &img) in gens.iter().zip(images) {
            if map[g] == UNSET {
                map[g] = img;
                stack.push(g);
            } else if map[g] != img {
                return None;
            }
        }
        let mut frontier = 0;
        while frontier < stack.len() {
            let x = stack[frontier];
            frontier += 1;
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let expected = self.table[map[x] as usize * n + img as usize];
                if map[y] == UNSET {
                    map[y] = expected;
                    stack.push(y);
                } else if map[y] != expected {
                    return None;
                }
            }
        }
        // gens generate, so the closure reached everything
        debug_assert!(map.iter().all(|&v| v != UNSET));
        let mut hit = vec![false; n];
        for &v in &map {
            if hit[v as usize] {
                return None;
            }
            hit[v as usize] = true;
        }
        // full homomorphism check on all pairs
        for a in 0..n {
            let ma = map[a] as usize * n;
            for b in 0..n {
                if map[self.table[a * n + b] as usize] != self.table[ma + map[b] as usize] {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Brute-force enumeration of all generating sets of minimal cardinality,
    /// found by trying sizes 0, 1, 2, … until one generates.
    pub fn minimal_generating_sets(&self) -> Vec<BTreeSet<usize>> {
        for k in 0..=self.n {
            let found = self.generating_sets_of_size(k);
            if !found.is_empty() {
                return found;
            }
        }
        unreachable!("the full carrier generates itself")
    }

    fn generating_sets_of_size(&self, k: usize) -> Vec<BTreeSet<usize>> {
        if k == 0 {
            return if self.brute_generates(&[]) {
                vec![BTreeSet::new()]
            } else {
                Vec::new()
            };
        }
        // parallelize over the first chosen element
        let mut sets: Vec<BTreeSet<usize>> = (0..self.n)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut acc = Vec::new();
                let mut subset = vec![first];
                self.collect_generating_subsets(k, first + 1, &mut subset, &mut acc);
                acc
            })
            .collect();
        sets.sort();
        sets
    }

    fn collect_generating_subsets(
        &self,
        k: usize,
        from: usize,
        subset: &mut Vec<usize>,
        acc: &mut Vec<BTreeSet<usize>>,
    ) {
        if subset.len() == k {
            if self.brute_generates(subset) {
                acc.push(subset.iter().copied().collect());
            }
            return;
        }
        for next in from..self.n {
            subset.push(next);
            self.collect_generating_subsets(k, next + 1, subset, acc);
            subset.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> ModulusContext {
        ModulusContext::new(p, e).unwrap()
    }

    #[test]
    fn monoid_table_basics() {
        let t = MulTable::monoid(ctx(2, 3));
        assert_eq!(t.size(), 8);
        assert_eq!(t.identity(), 1);
        assert_eq!(t.absorbing(), Some(0));
        assert!(t.is_commutative());
        assert_eq!(t.mul(4, 2), 0);
    }

    #[test]
    fn orders_and_center() {
        let (u32_table, values) = MulTable::unit_group(ctx(2, 5));
        let idx7 = values.iter().position(|&v| v == 7).unwrap();
        assert_eq!(u32_table.brute_order(idx7).unwrap(), 4);
        let (u9, values) = MulTable::unit_group(ctx(3, 2));
        let idx2 = values.iter().position(|&v| v == 2).unwrap();
        assert_eq!(u9.brute_order(idx2).unwrap(), 6);
        assert_eq!(u9.brute_order(u9.identity()).unwrap(), 1);
        // abelian tables are all center
        assert_eq!(u9.brute_center().len(), 6);
        // non-invertible element
        let m8 = MulTable::monoid(ctx(2, 3));
        assert!(m8.brute_order(2).is_err());
    }

    #[test]
    fn generation() {
        let (u8_table, values) = MulTable::unit_group(ctx(2, 3));
        let idx = |v: u64| values.iter().position(|&x| x == v).unwrap();
        assert!(u8_table.brute_generates(&[idx(3), idx(5)]));
        assert!(!u8_table.brute_generates(&[idx(7)]));
        let m9 = MulTable::monoid(ctx(3, 2));
        assert!(m9.brute_generates(&[6, 2]));
        assert!(!m9.brute_generates(&[3, 4]));
    }

    #[test]
    fn automorphism_counts() {
        // the monoid ℤ/8ℤ has 4 automorphisms
        let m8 = MulTable::monoid(ctx(2, 3));
        let autos = m8.brute_automorphisms(&[2, 7, 5]).unwrap();
        assert_eq!(autos.len(), 4);
        // all fix 4 (and of course 0 and 1)
        for a in &autos {
            assert_eq!(a[4], 4);
            assert_eq!(a[0], 0);
            assert_eq!(a[1], 1);
        }
        // U_9 has φ(6) = 2 automorphisms
        let (u9, values) = MulTable::unit_group(ctx(3, 2));
        let idx2 = values.iter().position(|&v| v == 2).unwrap();
        assert_eq!(u9.brute_automorphisms(&[idx2]).unwrap().len(), 2);
        // the trivial monoid has exactly one
        let trivial = MulTable::from_op(1, |_, _| 0).unwrap();
        assert_eq!(trivial.brute_automorphisms(&[0]).unwrap().len(), 1);
    }

    #[test]
    fn automorphisms_independent_of_generating_set() {
        let (u16_table, values) = MulTable::unit_group(ctx(2, 4));
        let idx = |v: u64| values.iter().position(|&x| x == v).unwrap();
        let a = u16_table.brute_automorphisms(&[idx(15), idx(5)]).unwrap();
        let b = u16_table.brute_automorphisms(&[idx(7), idx(3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
    }

    #[test]
    fn automorphism_set_is_a_group() {
        let m16 = MulTable::monoid(ctx(2, 4));
        let autos = m16.brute_automorphisms(&[2, 15, 5]).unwrap();
        let set: BTreeSet<&Vec<u16>> = autos.iter().collect();
        for f in &autos {
            // inverse is also present
            let mut inv = vec![0u16; f.len()];
            for (x, &fx) in f.iter().enumerate() {
                inv[fx as usize] = x as u16;
            }
            assert!(set.contains(&inv));
            for g in &autos {
                let composed: Vec<u16> = (0..f.len()).map(|x| f[g[x] as usize]).collect();
                assert!(set.contains(&composed));
            }
        }
    }

    #[test]
    fn minimal_generating_set_enumeration() {
        let (u8_table, values) = MulTable::unit_group(ctx(2, 3));
        let sets = u8_table.minimal_generating_sets();
        let as_values: Vec<BTreeSet<u64>> = sets
            .iter()
            .map(|s| s.iter().map(|&i| values[i]).collect())
            .collect();
        assert_eq!(
            as_values,
            vec![
                BTreeSet::from([3, 5]),
                BTreeSet::from([3, 7]),
                BTreeSet::from([5, 7]),
            ]
        );
        // trivial group: generated by the empty set
        let trivial = MulTable::from_op(1, |_, _| 0).unwrap();
        assert_eq!(trivial.minimal_generating_sets(), vec![BTreeSet::new()]);
    }

    #[test]
    fn rejects_non_generating_sets() {
        let m8 = MulTable::monoid(ctx(2, 3));
        assert!(m8.brute_automorphisms(&[2]).is_err());
    }
}
