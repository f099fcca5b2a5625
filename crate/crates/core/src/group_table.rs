//! Explicit finite groups as multiplication tables: validated construction,
//! direct/semidirect/central products, and certified isomorphism search by
//! backtracking over generator images.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A finite group given by element labels and an n×n multiplication table.
///
/// Construction machine-checks the group axioms: an identity, each row and
/// column a permutation, and associativity via Light's test against a
/// greedily chosen generating set (full triple products are checked whenever
/// the middle factor is a generator, which suffices once the generators span
/// the carrier).
#[derive(Debug, Clone)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<u16>,
    identity: usize,
    inverses: Vec<u16>,
    orders: Vec<u64>,
}

impl GroupTable {
    pub fn from_op(labels: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        assert!(n > 0 && n <= u16::MAX as usize, "group size {n} out of range");
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = op(a, b);
                if v >= n {
                    return Err(Error::GroupAxiom(format!(
                        "operation escapes the carrier at ({a}, {b})"
                    )));
                }
                table[a * n + b] = v as u16;
            }
        }
        // rows and columns must be permutations
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = table[a * n + b] as usize;
                let c = table[b * n + a] as usize;
                if row[r] || col[c] {
                    return Err(Error::GroupAxiom(format!(
                        "cancellation fails in row/column {a}"
                    )));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&i| (0..n).all(|x| table[i * n + x] as usize == x && table[x * n + i] as usize == x))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        // greedy generating set, then Light's associativity test
        let generators = greedy_generators(n, &table, identity);
        for &g in &generators {
            for a in 0..n {
                let ag = table[a * n + g] as usize;
                for c in 0..n {
                    let gc = table[g * n + c] as usize;
                    if table[ag * n + c] != table[a * n + gc] {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails at ({a}, {g}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| Error::GroupAxiom(format!("element {a} has no inverse")))?;
            if table[inv * n + a] as usize != identity {
                return Err(Error::GroupAxiom(format!(
                    "left and right inverses of {a} disagree"
                )));
            }
            inverses[a] = inv as u16;
        }
        let mut orders = vec![0u64; n];
        for a in 0..n {
            let mut cur = a;
            let mut k = 1u64;
            while cur != identity {
                cur = table[cur * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        Ok(Self {
            labels,
            table,
            identity,
            inverses,
            orders,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a * n + b] == self.table[b * n + a]))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for &o in &self.orders {
            *hist.entry(o).or_insert(0) += 1;
        }
        hist
    }

    /// Cayley table as CSV: first row and first column are element labels.
    pub fn to_csv(&self) -> String {
        let n = self.size();
        let mut out = String::new();
        out.push_str(&format!(",{}\n", self.labels.join(",")));
        for a in 0..n {
            out.push_str(&self.labels[a]);
            for b in 0..n {
                out.push(',');
                out.push_str(&self.labels[self.mul(a, b)]);
            }
            out.push('\n');
        }
        out
    }

    // ------------------------------------------------------------------
    // Named constructions
    // ------------------------------------------------------------------

    /// ℤ/nℤ under addition.
    pub fn cyclic(n: u64) -> Self {
        let n = n.max(1) as usize;
        Self::from_op((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
            .expect("cyclic groups satisfy the axioms")
    }

    /// The Klein four-group.
    pub fn klein_four() -> Self {
        Self::from_op(
            vec!["e".into(), "a".into(), "b".into(), "ab".into()],
            |x, y| x ^ y,
        )
        .expect("Klein four-group")
    }

    /// Dihedral group of order 8 from the presentation
    /// ⟨r, s | r s r = s, s² = 1, r⁴ = 1⟩; element 2i + j encodes r^i s^j.
    pub fn dihedral_8() -> Self {
        let labels = (0..4)
            .flat_map(|i| {
                (0..2).map(move |j| match (i, j) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "s".to_string(),
                    (i, 0) => format!("r{i}"),
                    (i, _) => format!("r{i}s"),
                })
            })
            .collect();
        Self::from_op(labels, |x, y| {
            let (i, j) = (x / 2, x % 2);
            let (k, l) = (y / 2, y % 2);
            // s r^k = r^{-k} s
            if j == 0 {
                ((i + k) % 4) * 2 + l
            } else {
                ((i + 4 - k) % 4) * 2 + (1 + l) % 2
            }
        })
        .expect("dihedral relations define a group of order 8")
    }

    /// The multiplicative group of units modulo an arbitrary m ≥ 1.
    pub fn units_mod(m: u64) -> Self {
        let values: Vec<u64> = (0..m.max(1))
            .filter(|&v| if m <= 1 { v == 0 } else { crate::arith::gcd(v, m) == 1 })
            .collect();
        let mut index_of = vec![usize::MAX; m.max(1) as usize];
        for (i, &v) in values.iter().enumerate() {
            index_of[v as usize] = i;
        }
        Self::from_op(values.iter().map(|v| v.to_string()).collect(), |a, b| {
            index_of[((values[a] as u128 * values[b] as u128) % m.max(1) as u128) as usize]
        })
        .expect("unit multiplication is a group")
    }

    /// The symmetric group on three points, elements in lexicographic order.
    pub fn symmetric_3() -> Self {
        let perms: Vec<[u8; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index_of = |p: &[u8; 3]| perms.iter().position(|q| q == p).expect("closed");
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Self::from_op(labels, |a, b| {
            // apply b first, then a
            let (pa, pb) = (perms[a], perms[b]);
            index_of(&[pa[pb[0] as usize], pa[pb[1] as usize], pa[pb[2] as usize]])
        })
        .expect("permutation composition")
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.size(), b.size());
        let labels = (0..na)
            .flat_map(|i| (0..nb).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", a.labels[i], b.labels[j]))
            .collect();
        Self::from_op(labels, |x, y| {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            a.mul(xa, ya) * nb + b.mul(xb, yb)
        })
        .expect("direct products of groups are groups")
    }

    /// Semidirect product N ⋊ H for an action of H on N by automorphisms;
    /// `action(h, x)` is the image of x ∈ N under h ∈ H. Multiplication is
    /// (x, h)(x', h') = (x · action(h, x'), h h'). Construction fails if the
    /// action is not by automorphisms (associativity breaks).
    pub fn semidirect_product(
        n_group: &GroupTable,
        h_group: &GroupTable,
        action: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let (nn, nh) = (n_group.size(), h_group.size());
        let labels = (0..nn)
            .flat_map(|x| (0..nh).map(move |h| (x, h)))
            .map(|(x, h)| format!("({},{})", n_group.labels[x], h_group.labels[h]))
            .collect();
        Self::from_op(labels, |p, q| {
            let (x, h) = (p / nh, p % nh);
            let (y, k) = (q / nh, q % nh);
            n_group.mul(x, action(h, y)) * nh + h_group.mul(h, k)
        })
    }

    /// Center indices the central-product data needs.
    fn check_central_embedding(g: &GroupTable, c: &GroupTable, iota: &[usize]) -> Result<()> {
        if iota.len() != c.size() {
            return Err(Error::InvalidParameter(
                "embedding must be defined on every element of C".into(),
            ));
        }
        let center = g.center();
        let mut seen = vec![false; g.size()];
        for (x, &img) in iota.iter().enumerate() {
            if !center.contains(&img) {
                return Err(Error::InvalidParameter(format!(
                    "image of {x} is not central"
                )));
            }
            if seen[img] {
                return Err(Error::InvalidParameter("embedding is not injective".into()));
            }
            seen[img] = true;
            for (y, &img_y) in iota.iter().enumerate() {
                if iota[c.mul(x, y)] != g.mul(img, img_y) {
                    return Err(Error::InvalidParameter(
                        "embedding is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Data of an external central product: two groups, a common central
/// subgroup C, and injective embeddings of C into both centers.
pub struct CentralProductSpec<'a> {
    pub g1: &'a GroupTable,
    pub g2: &'a GroupTable,
    pub c: &'a GroupTable,
    pub iota1: Vec<usize>,
    pub iota2: Vec<usize>,
}

impl CentralProductSpec<'_> {
    /// The quotient (G₁ × G₂) / Δ(C) with cosets represented by their least
    /// pair index; C = 1 recovers the direct product.
    pub fn build(&self) -> Result<GroupTable> {
        GroupTable::check_central_embedding(self.g1, self.c, &self.iota1)?;
        GroupTable::check_central_embedding(self.g2, self.c, &self.iota2)?;
        let (n1, n2) = (self.g1.size(), self.g2.size());
        let pair_count = n1 * n2;
        let mut coset_of = vec![usize::MAX; pair_count];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                let idx = a * n2 + b;
                if coset_of[idx] != usize::MAX {
                    continue;
                }
                let coset = reps.len();
                for c in 0..self.c.size() {
                    let a2 = self.g1.mul(a, self.iota1[c]);
                    let b2 = self.g2.mul(b, self.iota2[c]);
                    let other = a2 * n2 + b2;
                    if coset_of[other] != usize::MAX && coset_of[other] != coset {
                        return Err(Error::GroupAxiom("diagonal cosets collide".into()));
                    }
                    coset_of[other] = coset;
                }
                reps.push((a, b));
            }
        }
        let labels = reps
            .iter()
            .map(|&(a, b)| format!("[{},{}]", self.g1.labels[a], self.g2.labels[b]))
            .collect();
        GroupTable::from_op(labels, |x, y| {
            let (a, b) = reps[x];
            let (c, d) = reps[y];
            coset_of[self.g1.mul(a, c) * n2 + self.g2.mul(b, d)]
        })
    }
}

fn greedy_generators(n: usize, table: &[u16], identity: usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut in_closure = vec![false; n];
    in_closure[identity] = true;
    let mut members = vec![identity];
    for x in 0..n {
        if in_closure[x] {
            continue;
        }
        gens.push(x);
        if !in_closure[x] {
            in_closure[x] = true;
            members.push(x);
        }
        let mut frontier = 0;
        while frontier < members.len() {
            let a = members[frontier];
            frontier += 1;
            for &g in &gens {
                for y in [table[a * n + g] as usize, table[g * n + a] as usize] {
                    if !in_closure[y] {
                        in_closure[y] = true;
                        members.push(y);
                    }
                }
            }
        }
    }
    gens
}

/// A bijection witnessing an isomorphism between two group tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    map: Vec<u16>,
}

impl IsoWitness {
    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    pub fn image_of(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    /// Re-validates the witness on all pairs.
    pub fn validate(&self, g: &GroupTable, h: &GroupTable) -> bool {
        let n = g.size();
        if h.size() != n || self.map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &v in &self.map {
            if hit[v as usize] {
                return false;
            }
            hit[v as usize] = true;
        }
        (0..n).all(|a| {
            (0..n).all(|b| self.map[g.mul(a, b)] as usize == h.mul(self.map[a] as usize, self.map[b] as usize))
        })
    }
}

/// Searches for an isomorphism G → H by backtracking over images of a
/// generating set of G, pruned by element-order histograms and center size.
/// Returns a validated witness, or `None` when the groups are provably not
/// isomorphic. Sizes above `bound` are refused.
pub fn groups_isomorphic(
    g: &GroupTable,
    h: &GroupTable,
    bound: usize,
) -> Result<Option<IsoWitness>> {
    if g.size() != h.size() {
        return Ok(None);
    }
    if g.size() > bound {
        return Err(Error::BoundExceeded {
            modulus: g.size() as u64,
            bound: bound as u64,
        });
    }
    if g.order_histogram() != h.order_histogram()
        || g.center().len() != h.center().len()
        || g.is_abelian() != h.is_abelian()
    {
        return Ok(None);
    }
    let gens = {
        // prefer high-order elements: fewer generators, smaller search tree
        let mut by_order: Vec<usize> = (0..g.size()).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        let mut chosen = Vec::new();
        let mut closure = vec![false; g.size()];
        closure[g.identity()] = true;
        let mut members = vec![g.identity()];
        for x in by_order {
            if closure[x] {
                continue;
            }
            chosen.push(x);
            closure[x] = true;
            members.push(x);
            let mut frontier = 0;
            while frontier < members.len() {
                let a = members[frontier];
                frontier += 1;
                for &gen in &chosen {
                    let y = g.mul(a, gen);
                    if !closure[y] {
                        closure[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        chosen
    };
    let mut images = Vec::with_capacity(gens.len());
    let witness = search_images(g, h, &gens, &mut images);
    if let Some(w) = &witness {
        debug_assert!(w.validate(g, h));
    }
    Ok(witness)
}

fn search_images(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    images: &mut Vec<usize>,
) -> Option<IsoWitness> {
    if images.len() == gens.len() {
        return extend_by_products(g, h, gens, images);
    }
    let next_gen = gens[images.len()];
    for candidate in 0..h.size() {
        if h.element_order(candidate) != g.element_order(next_gen) {
            continue;
        }
        images.push(candidate);
        // partial consistency: the assigned generators must already extend
        if extend_partial(g, h, &gens[..images.len()], images) {
            if let Some(w) = search_images(g, h, gens, images) {
                return Some(w);
            }
        }
        images.pop();
    }
    None
}

/// Checks that the partial assignment extends consistently over the subgroup
/// generated so far.
fn extend_partial(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    build_map(g, h, gens, images).is_some()
}

/// Builds the full candidate map along products of generators; `None` on any
/// inconsistency. The map covers all of G only when `gens` generates it.
fn build_map(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<u16>> {
    const UNSET: u16 = u16::MAX;
    let n = g.size();
    let mut map = vec![UNSET; n];
    map[g.identity()] = h.identity() as u16;
    let mut stack = vec![g.identity()];
    for (&gen, &img) in gens.iter().zip(images) {
        if map[gen] == UNSET {
            map[gen] = img as u16;
            stack.push(gen);
        } else if map[gen] != img as u16 {
            return None;
        }
    }
    let mut frontier = 0;
    while frontier < stack.len() {
        let x = stack[frontier];
        frontier += 1;
        for (&gen, &img) in gens.iter().zip(images) {
            let y = g.mul(x, gen);
            let expected = h.mul(map[x] as usize, img) as u16;
            if map[y] == UNSET {
                map[y] = expected;
                stack.push(y);
            } else if map[y] != expected {
                return None;
            }
        }
    }
    Some(map)
}

/// Completes a full generator-image assignment into a validated witness.
fn extend_by_products(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    images: &[usize],
) -> Option<IsoWitness> {
    let map = build_map(g, h, gens, images)?;
    if map.iter().any(|&v| v == u16::MAX) {
        return None;
    }
    let witness = IsoWitness { map };
    witness.validate(g, h).then_some(witness)
}

/// Validates a specific generator-image assignment (explicit textbook
/// witnesses) into a full isomorphism, if it extends.
pub fn isomorphism_from_generator_images(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    images: &[usize],
) -> Option<IsoWitness> {
    if g.size() != h.size() || gens.len() != images.len() {
        return None;
    }
    extend_by_products(g, h, gens, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups() {
        let d8 = GroupTable::dihedral_8();
        assert_eq!(d8.size(), 8);
        assert_eq!(d8.center().len(), 2);
        assert!(!d8.is_abelian());
        let s3 = GroupTable::symmetric_3();
        assert_eq!(s3.size(), 6);
        assert_eq!(s3.center().len(), 1);
        let k = GroupTable::klein_four();
        assert!(k.is_abelian());
        assert_eq!(k.order_histogram(), BTreeMap::from([(1, 1), (2, 3)]));
        assert_eq!(GroupTable::cyclic(12).element_order(2), 6);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // constant op: no identity, no cancellation
        assert!(GroupTable::from_op(vec!["a".into(), "b".into()], |_, _| 0).is_err());
        // subtraction mod 3 is not associative
        assert!(GroupTable::from_op(
            (0..3).map(|i| i.to_string()).collect(),
            |a, b| (a + 3 - b) % 3
        )
        .is_err());
    }

    #[test]
    fn products() {
        let z2 = GroupTable::cyclic(2);
        let z4 = GroupTable::cyclic(4);
        let direct = GroupTable::direct_product(&z4, &z2);
        assert_eq!(direct.size(), 8);
        assert!(direct.is_abelian());
        // D4 as Z/4 ⋊ Z/2 with inversion action
        let semidirect = GroupTable::semidirect_product(&z4, &z2, |h, x| {
            if h == 1 {
                (4 - x) % 4
            } else {
                x
            }
        })
        .unwrap();
        assert_eq!(semidirect.size(), 8);
        assert!(!semidirect.is_abelian());
        assert!(groups_isomorphic(&semidirect, &GroupTable::dihedral_8(), 64)
            .unwrap()
            .is_some());
        // a non-automorphism action fails construction
        assert!(GroupTable::semidirect_product(&z4, &z2, |h, x| if h == 1 {
            (x + 1) % 4
        } else {
            x
        })
        .is_err());
    }

    #[test]
    fn central_product_orders() {
        let d8 = GroupTable::dihedral_8();
        let z2 = GroupTable::cyclic(2);
        // Z(D4) = {e, r2}; embed Z/2 as that
        let r2 = d8.labels().iter().position(|l| l == "r2").unwrap();
        let spec = CentralProductSpec {
            g1: &d8,
            g2: &z2,
            c: &z2,
            iota1: vec![d8.identity(), r2],
            iota2: vec![0, 1],
        };
        let cp = spec.build().unwrap();
        assert_eq!(cp.size(), 8 * 2 / 2);
        // degenerate C = 1 gives the direct product
        let trivial = GroupTable::cyclic(1);
        let spec = CentralProductSpec {
            g1: &d8,
            g2: &z2,
            c: &trivial,
            iota1: vec![d8.identity()],
            iota2: vec![0],
        };
        assert_eq!(spec.build().unwrap().size(), 16);
        // reject non-central embeddings
        let bad = CentralProductSpec {
            g1: &d8,
            g2: &z2,
            c: &z2,
            iota1: vec![d8.identity(), 2],
            iota2: vec![0, 1],
        };
        assert!(bad.build().is_err());
    }

    #[test]
    fn isomorphism_search() {
        let z4 = GroupTable::cyclic(4);
        let klein = GroupTable::klein_four();
        assert!(groups_isomorphic(&z4, &klein, 64).unwrap().is_none());
        assert!(groups_isomorphic(&z4, &GroupTable::cyclic(5), 64)
            .unwrap()
            .is_none());
        let w = groups_isomorphic(&z4, &GroupTable::cyclic(4), 64)
            .unwrap()
            .unwrap();
        assert!(w.validate(&z4, &GroupTable::cyclic(4)));
        // symmetric and reflexive
        let d8 = GroupTable::dihedral_8();
        let q = GroupTable::semidirect_product(&GroupTable::cyclic(4), &GroupTable::cyclic(2), |h, x| {
            if h == 1 {
                (4 - x) % 4
            } else {
                x
            }
        })
        .unwrap();
        assert!(groups_isomorphic(&d8, &q, 64).unwrap().is_some());
        assert!(groups_isomorphic(&q, &d8, 64).unwrap().is_some());
        assert!(matches!(
            groups_isomorphic(
                &GroupTable::cyclic(5000),
                &GroupTable::cyclic(5000),
                4096
            ),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn explicit_generator_witnesses() {
        // Z/6 ≅ Z/2 × Z/3 sending 1 ↦ (1, 1)
        let z6 = GroupTable::cyclic(6);
        let z2xz3 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(3));
        let w = isomorphism_from_generator_images(&z6, &z2xz3, &[1], &[1 * 3 + 1]);
        assert!(w.is_some());
        // but 1 ↦ (0, 1) does not extend
        assert!(isomorphism_from_generator_images(&z6, &z2xz3, &[1], &[1]).is_none());
    }

    #[test]
    fn csv_export() {
        let z2 = GroupTable::cyclic(2);
        assert_eq!(z2.to_csv(), ",0,1\n0,0,1\n1,1,0\n");
    }
}
