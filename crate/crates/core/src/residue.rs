//! Arithmetic in ℤ/pᵉℤ: canonical residues, p-adic decomposition, element
//! orders, discrete logarithms, and classification of minimal generating sets
//! for both the unit group and the full multiplicative monoid.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::arith::{self, gcd, inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Maximum allowed modulus, so every product fits comfortably in `u128`
/// intermediates and every value in `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// The pair (p, e) with cached constants. Every residue in the crate is
/// interpreted relative to one such context.
///
/// `e = 0` is permitted as a degenerate context with modulus 1; it shows up
/// as the target of reductions and as the `r`-component context of monoid
/// automorphisms when `e = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModulusContext {
    p: u64,
    e: u32,
    modulus: u64,
    unit_group_order: u64,
}

impl ModulusContext {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut modulus: u64 = 1;
        for _ in 0..e {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m <= MAX_MODULUS)
                .ok_or(Error::ModulusTooLarge { p, e })?;
        }
        let unit_group_order = if e == 0 { 1 } else { modulus / p * (p - 1) };
        Ok(Self {
            p,
            e,
            modulus,
            unit_group_order,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// φ(pᵉ) = p^{e-1}(p-1), and 1 for the degenerate e = 0 context.
    pub fn unit_group_order(&self) -> u64 {
        self.unit_group_order
    }

    /// The context (p, f) for the same prime.
    pub fn reduce_exponent(&self, f: u32) -> Result<Self> {
        if f > self.e {
            return Err(Error::InvalidParameter(format!(
                "cannot reduce modulus {}^{} upward to exponent {f}",
                self.p, self.e
            )));
        }
        Self::new(self.p, f)
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            ctx: *self,
            value: value % self.modulus,
        }
    }

    /// A residue from a possibly negative integer.
    pub fn residue_from_i64(&self, value: i64) -> Residue {
        self.residue(value.rem_euclid(self.modulus as i64) as u64)
    }

    pub fn unit(&self, value: u64) -> Result<UnitResidue> {
        let r = self.residue(value);
        if !self.is_unit_value(r.value) {
            return Err(Error::NonUnit {
                value: r.value,
                modulus: self.modulus,
            });
        }
        Ok(UnitResidue(r))
    }

    fn is_unit_value(&self, canonical: u64) -> bool {
        if self.modulus == 1 {
            // the single class of ℤ/1ℤ is its own identity
            true
        } else {
            gcd(canonical, self.p) == 1
        }
    }

    /// All canonical unit representatives, in increasing order.
    pub fn units(&self) -> Vec<UnitResidue> {
        (0..self.modulus)
            .filter(|&v| self.is_unit_value(v))
            .map(|v| UnitResidue(self.residue(v)))
            .collect()
    }

    pub fn check_same(&self, other: &ModulusContext) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

impl fmt::Display for ModulusContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

/// Canonical residue: an integer in [0, pᵉ) tagged with its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    ctx: ModulusContext,
    value: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.ctx.residue(mul_mod(self.value, other.value, self.ctx.modulus.max(1))))
    }

    pub fn pow(&self, k: u64) -> Residue {
        self.ctx.residue(pow_mod(self.value, k, self.ctx.modulus))
    }

    pub fn is_unit(&self) -> bool {
        self.ctx.is_unit_value(self.value)
    }

    pub fn as_unit(&self) -> Result<UnitResidue> {
        self.ctx.unit(self.value)
    }

    /// Canonical p-adic form p^u · r; two residues are equal iff their
    /// canonical forms are.
    pub fn padic_decompose(&self) -> PadicForm {
        let ctx = self.ctx;
        if self.value == 0 {
            // valuation capped at e, unit part pinned to 1
            return PadicForm {
                ctx,
                valuation: ctx.e,
                unit_part: if ctx.modulus == 1 { 0 } else { 1 },
            };
        }
        let mut v = self.value;
        let mut u = 0u32;
        while v % ctx.p == 0 {
            v /= ctx.p;
            u += 1;
        }
        PadicForm {
            ctx,
            valuation: u,
            unit_part: v,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A residue coprime to p (invertible in the monoid).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitResidue(Residue);

impl UnitResidue {
    pub fn value(&self) -> u64 {
        self.0.value
    }

    pub fn ctx(&self) -> ModulusContext {
        self.0.ctx
    }

    pub fn as_residue(&self) -> Residue {
        self.0
    }

    pub fn mul(&self, other: &UnitResidue) -> Result<UnitResidue> {
        Ok(UnitResidue(self.0.mul(&other.0)?))
    }

    pub fn pow(&self, k: u64) -> UnitResidue {
        UnitResidue(self.0.pow(k))
    }

    pub fn inverse(&self) -> UnitResidue {
        let m = self.ctx().modulus;
        let inv = inv_mod(self.value(), m).expect("unit residues are invertible");
        UnitResidue(self.ctx().residue(inv))
    }

    /// Multiplicative order. Uses the two-adic case formula for p = 2 and
    /// order-divisor descent for odd p.
    pub fn order(&self) -> u64 {
        let ctx = self.ctx();
        if ctx.modulus <= 2 {
            return 1;
        }
        if ctx.p == 2 {
            let (v, w) = self.two_adic_coordinates();
            return match (v, w) {
                (false, 0) => 1,
                (true, 0) => 2,
                (_, w) => 1 << (ctx.e - 2 - w.trailing_zeros()),
            };
        }
        arith::order_by_descent(self.value(), ctx.modulus, ctx.unit_group_order)
    }

    /// For p = 2, e ≥ 2: the coordinates (v, w) with self = (−1)^v 5^w.
    fn two_adic_coordinates(&self) -> (bool, u64) {
        let ctx = self.ctx();
        debug_assert!(ctx.p == 2 && ctx.e >= 2);
        if ctx.e == 2 {
            return (self.value() == 3, 0);
        }
        let m = ctx.modulus;
        let v = self.value() % 4 == 3;
        let b = if v { m - self.value() } else { self.value() };
        // b ≡ 1 (mod 4) lies in ⟨5⟩; recover w bit by bit through the
        // filtration 1 + 4ℤ ⊃ 1 + 8ℤ ⊃ …
        let mut w = 0u64;
        for i in 0..(ctx.e - 2) {
            let step_modulus = 1u64 << (i + 3);
            if pow_mod(5, w, step_modulus) != b % step_modulus {
                w += 1 << i;
            }
        }
        debug_assert_eq!(pow_mod(5, w, m), b);
        (v, w)
    }

    /// Exact decomposition over the context's canonical generators.
    pub fn decompose(&self) -> UnitDecomposition {
        let ctx = self.ctx();
        if ctx.p == 2 && ctx.e >= 3 {
            let (v, w) = self.two_adic_coordinates();
            return UnitDecomposition::TwoAdic { v, w };
        }
        if ctx.modulus == 1 {
            return UnitDecomposition::Cyclic { k: 0 };
        }
        let g = primitive_root(ctx).expect("cyclic unit group has a primitive root");
        UnitDecomposition::Cyclic {
            k: discrete_log(&g, self).expect("primitive root generates every unit"),
        }
    }
}

impl fmt::Display for UnitResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Canonical form p^u · r of a residue modulo pᵉ.
///
/// `unit_part` is the canonical representative modulo p^{e−u}; the zero
/// residue is normalized to valuation e with unit part 1, so structural
/// equality of forms coincides with equality of the underlying residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicForm {
    ctx: ModulusContext,
    valuation: u32,
    unit_part: u64,
}

impl PadicForm {
    /// Canonicalizes (u, r): caps the valuation at e, pins the unit part of
    /// zero to 1, and reduces r modulo p^{e−u}.
    pub fn new(ctx: ModulusContext, valuation: u32, unit_part: u64) -> Result<Self> {
        if ctx.modulus == 1 {
            return Ok(Self {
                ctx,
                valuation: 0,
                unit_part: 0,
            });
        }
        if valuation >= ctx.e {
            return Ok(Self {
                ctx,
                valuation: ctx.e,
                unit_part: 1,
            });
        }
        let unit_modulus = ctx.modulus / pow_u64(ctx.p, valuation);
        let r = unit_part % unit_modulus;
        if gcd(r, ctx.p) != 1 {
            return Err(Error::NonUnit {
                value: r,
                modulus: unit_modulus,
            });
        }
        Ok(Self {
            ctx,
            valuation,
            unit_part: r,
        })
    }

    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    pub fn unit_part(&self) -> u64 {
        self.unit_part
    }

    /// The modulus p^{e−u} the unit part is canonical against.
    pub fn unit_modulus(&self) -> u64 {
        self.ctx.modulus / pow_u64(self.ctx.p, self.valuation.min(self.ctx.e))
    }

    pub fn recompose(&self) -> Residue {
        let p_pow = pow_mod(self.ctx.p, self.valuation as u64, self.ctx.modulus.max(1));
        self.ctx
            .residue(mul_mod(p_pow, self.unit_part, self.ctx.modulus.max(1)))
    }
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    base.pow(exp)
}

/// Exact coordinates of a unit over the canonical generators: (−1)^v 5^w for
/// p = 2, e ≥ 3, and g^k over the fixed primitive root otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitDecomposition {
    TwoAdic { v: bool, w: u64 },
    Cyclic { k: u64 },
}

impl UnitDecomposition {
    pub fn recompose(&self, ctx: ModulusContext) -> Result<UnitResidue> {
        match *self {
            UnitDecomposition::TwoAdic { v, w } => {
                if ctx.p != 2 || ctx.e < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "two-adic coordinates are only defined modulo 2^e with e >= 3, got {ctx}"
                    )));
                }
                Ok(two_adic_unit(ctx, v, w))
            }
            UnitDecomposition::Cyclic { k } => {
                if ctx.p == 2 && ctx.e >= 3 {
                    return Err(Error::InvalidParameter(format!(
                        "the unit group modulo {ctx} is not cyclic"
                    )));
                }
                let g = primitive_root(ctx)?;
                Ok(g.pow(k))
            }
        }
    }
}

/// The unit (−1)^v 5^w modulo 2^e (e ≥ 3 so that this is a bijection from
/// {0,1} × [0, 2^{e−2})).
pub fn two_adic_unit(ctx: ModulusContext, v: bool, w: u64) -> UnitResidue {
    debug_assert!(ctx.p == 2 && ctx.e >= 3);
    let m = ctx.modulus;
    let five_w = pow_mod(5, w, m);
    let value = if v { m - five_w } else { five_w };
    ctx.unit(value).expect("(-1)^v 5^w is odd")
}

/// Smallest integer g ≥ 2 of full multiplicative order, for the cyclic cases
/// (odd p, or p = 2 with e ≤ 2; modulus 1 degenerates to the identity).
pub fn primitive_root(ctx: ModulusContext) -> Result<UnitResidue> {
    if ctx.p == 2 && ctx.e >= 3 {
        return Err(Error::NoPrimitiveRoot { e: ctx.e });
    }
    if ctx.modulus == 1 {
        return ctx.unit(0);
    }
    let target = ctx.unit_group_order;
    for g in 2.. {
        if gcd(g, ctx.p) != 1 {
            continue;
        }
        if arith::order_by_descent(g % ctx.modulus, ctx.modulus, target) == target {
            return ctx.unit(g);
        }
    }
    unreachable!("cyclic unit groups contain a generator")
}

/// Baby-step giant-step discrete logarithm: the k with base^k = target, if
/// one exists in the subgroup generated by `base`.
pub fn discrete_log(base: &UnitResidue, target: &UnitResidue) -> Option<u64> {
    let ctx = base.ctx();
    if ctx != target.ctx() {
        return None;
    }
    if ctx.modulus == 1 {
        return Some(0);
    }
    let n = base.order();
    let m = (n as f64).sqrt().ceil() as u64;
    let modulus = ctx.modulus;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, base.value(), modulus);
    }
    // cur = base^m; giant steps multiply by base^{-m}
    let giant = inv_mod(cur, modulus)?;
    let mut gamma = target.value();
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            return Some((i * m + j) % n.max(1));
        }
        gamma = mul_mod(gamma, giant, modulus);
    }
    None
}

/// Verifies the power-shift identity 5^{w+2^{e−5}} ≡ 5^w + 2^{e−3}
/// (mod 2^{e−2}) for all w; a self-test of the arithmetic layer.
pub fn check_power_shift(e: u32) -> Result<bool> {
    if e < 5 {
        return Err(Error::ExponentTooSmall { e, min: 5 });
    }
    let m = 1u64 << (e - 2);
    let shift = 1u64 << (e - 5);
    let offset = 1u64 << (e - 3);
    Ok((0..m).all(|w| pow_mod(5, w + shift, m) == (pow_mod(5, w, m) + offset) % m))
}

/// Precomputed unit decompositions for one context; the hot verification
/// sweeps use this instead of repeated discrete logarithms.
pub struct UnitDecompTable {
    ctx: ModulusContext,
    slots: Vec<Option<UnitDecomposition>>,
}

impl UnitDecompTable {
    pub fn new(ctx: ModulusContext) -> Self {
        let m = ctx.modulus as usize;
        let mut slots = vec![None; m.max(1)];
        if ctx.modulus == 1 {
            slots[0] = Some(UnitDecomposition::Cyclic { k: 0 });
        } else if ctx.p == 2 && ctx.e >= 3 {
            let half = 1u64 << (ctx.e - 2);
            for w in 0..half {
                for v in [false, true] {
                    let u = two_adic_unit(ctx, v, w);
                    slots[u.value() as usize] = Some(UnitDecomposition::TwoAdic { v, w });
                }
            }
        } else {
            let g = primitive_root(ctx).expect("cyclic case");
            let mut cur = ctx.unit(1).expect("1 is a unit");
            for k in 0..ctx.unit_group_order {
                slots[cur.value() as usize] = Some(UnitDecomposition::Cyclic { k });
                cur = cur.mul(&g).expect("same context");
            }
        }
        Self { ctx, slots }
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn decompose(&self, value: u64) -> Option<UnitDecomposition> {
        self.slots.get(value as usize).copied().flatten()
    }
}

// ---------------------------------------------------------------------------
// Minimal generating sets
// ---------------------------------------------------------------------------

/// Closed-form test for S being a minimal generating set of the unit group.
///
/// Odd p (and p = 2 with e = 2): a single element of full order. For p = 2,
/// e ≥ 3: the shape {(−1)·5^u, (−1)^v·5^w} with w odd and u even when v = 1,
/// in either order. The trivial unit group is generated minimally by the
/// empty set.
pub fn is_minimal_unit_generating_set(ctx: ModulusContext, set: &BTreeSet<u64>) -> bool {
    let canonical: BTreeSet<u64> = set.iter().map(|&v| v % ctx.modulus.max(1)).collect();
    if canonical.len() != set.len() {
        return false;
    }
    if ctx.unit_group_order == 1 {
        return canonical.is_empty();
    }
    if ctx.p != 2 || ctx.e <= 2 {
        if canonical.len() != 1 {
            return false;
        }
        let v = *canonical.iter().next().expect("len checked");
        return match ctx.unit(v) {
            Ok(u) => u.order() == ctx.unit_group_order,
            Err(_) => false,
        };
    }
    if canonical.len() != 2 {
        return false;
    }
    let mut units = Vec::with_capacity(2);
    for &v in &canonical {
        match ctx.unit(v) {
            Ok(u) => units.push(u.decompose()),
            Err(_) => return false,
        }
    }
    let pair_fits = |first: &UnitDecomposition, second: &UnitDecomposition| {
        let (UnitDecomposition::TwoAdic { v: v1, w: u }, UnitDecomposition::TwoAdic { v: v2, w }) =
            (*first, *second)
        else {
            return false;
        };
        v1 && w % 2 == 1 && (!v2 || u % 2 == 0)
    };
    pair_fits(&units[0], &units[1]) || pair_fits(&units[1], &units[0])
}

/// Closed-form test for S being a minimal generating set of the multiplicative
/// monoid: exactly one element p·a with a a unit, the rest a minimal unit
/// generating set.
pub fn is_minimal_monoid_generating_set(ctx: ModulusContext, set: &BTreeSet<u64>) -> bool {
    let canonical: BTreeSet<u64> = set.iter().map(|&v| v % ctx.modulus.max(1)).collect();
    if canonical.len() != set.len() {
        return false;
    }
    let mut units = BTreeSet::new();
    let mut valuation_one = 0usize;
    for &v in &canonical {
        let form = ctx.residue(v).padic_decompose();
        match form.valuation() {
            0 => {
                units.insert(v);
            }
            1 => valuation_one += 1,
            _ => return false,
        }
    }
    valuation_one == 1 && is_minimal_unit_generating_set(ctx, &units)
}

/// Every minimal generating set of the unit group, deduplicated, in
/// deterministic order.
pub fn minimal_unit_generating_sets(
    ctx: ModulusContext,
    bound: u64,
) -> Result<Vec<BTreeSet<u64>>> {
    if ctx.modulus > bound {
        return Err(Error::BoundExceeded {
            modulus: ctx.modulus,
            bound,
        });
    }
    let mut sets = BTreeSet::new();
    if ctx.unit_group_order == 1 {
        sets.insert(BTreeSet::new());
    } else if ctx.p != 2 || ctx.e <= 2 {
        let g = primitive_root(ctx)?;
        for v in 0..ctx.unit_group_order {
            if gcd(v, ctx.unit_group_order) == 1 {
                sets.insert(BTreeSet::from([g.pow(v).value()]));
            }
        }
    } else {
        let half = 1u64 << (ctx.e - 2);
        for u in 0..half {
            let first = two_adic_unit(ctx, true, u);
            for w in (1..half).step_by(2) {
                // v = 0 freely; v = 1 requires u even
                sets.insert(BTreeSet::from([
                    first.value(),
                    two_adic_unit(ctx, false, w).value(),
                ]));
                if u % 2 == 0 {
                    sets.insert(BTreeSet::from([
                        first.value(),
                        two_adic_unit(ctx, true, w).value(),
                    ]));
                }
            }
        }
    }
    Ok(sets.into_iter().collect())
}

/// Every minimal generating set of the monoid: {p·a} ∪ G over units a modulo
/// p^{e−1} and minimal unit generating sets G.
pub fn minimal_monoid_generating_sets(
    ctx: ModulusContext,
    bound: u64,
) -> Result<Vec<BTreeSet<u64>>> {
    if ctx.modulus > bound {
        return Err(Error::BoundExceeded {
            modulus: ctx.modulus,
            bound,
        });
    }
    let unit_sets = minimal_unit_generating_sets(ctx, bound)?;
    let lower = ctx.reduce_exponent(ctx.e.saturating_sub(1))?;
    let mut sets = BTreeSet::new();
    for a in 0..lower.modulus() {
        if lower.modulus() > 1 && gcd(a, ctx.p) != 1 {
            continue;
        }
        let pa = (ctx.p * a) % ctx.modulus.max(1);
        for g in &unit_sets {
            let mut s = g.clone();
            s.insert(pa);
            sets.insert(s);
        }
    }
    Ok(sets.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> ModulusContext {
        ModulusContext::new(p, e).unwrap()
    }

    #[test]
    fn context_invariants() {
        let c = ctx(3, 2);
        assert_eq!(c.modulus(), 9);
        assert_eq!(c.unit_group_order(), 6);
        assert!(matches!(ModulusContext::new(6, 2), Err(Error::NotPrime(6))));
        assert!(matches!(
            ModulusContext::new(2, 63),
            Err(Error::ModulusTooLarge { .. })
        ));
        assert_eq!(ModulusContext::new(2, 62).unwrap().modulus(), 1 << 62);
    }

    #[test]
    fn multiplication() {
        let c = ctx(3, 2);
        assert_eq!(c.residue(4).mul(&c.residue(7)).unwrap().value(), 1);
        let c = ctx(2, 5);
        assert_eq!(c.residue(5).mul(&c.residue(5)).unwrap().value(), 25);
        let c = ctx(2, 3);
        assert_eq!(c.residue(4).mul(&c.residue(2)).unwrap().value(), 0);
        let other = ctx(3, 1);
        assert!(matches!(
            c.residue(1).mul(&other.residue(1)),
            Err(Error::ContextMismatch { .. })
        ));
    }

    #[test]
    fn padic_decomposition() {
        let c = ctx(3, 2);
        let form = c.residue(3).padic_decompose();
        assert_eq!((form.valuation(), form.unit_part()), (1, 1));
        assert_eq!(form, c.residue(12).padic_decompose());
        // non-canonical constructions collapse to the same form
        assert_eq!(form, PadicForm::new(c, 1, 4).unwrap());
        let zero = ctx(2, 3).residue(0).padic_decompose();
        assert_eq!((zero.valuation(), zero.unit_part()), (3, 1));
        assert_eq!(zero.recompose().value(), 0);
    }

    #[test]
    fn padic_equality_matches_residue_equality_exhaustively() {
        for (p, e) in [(2, 5), (3, 3), (5, 2), (7, 1)] {
            let c = ctx(p, e);
            for a in 0..c.modulus() {
                for b in 0..c.modulus() {
                    let equal_forms =
                        c.residue(a).padic_decompose() == c.residue(b).padic_decompose();
                    assert_eq!(equal_forms, a == b, "p={p} e={e} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn unit_orders() {
        let c = ctx(2, 5);
        assert_eq!(c.unit(7).unwrap().order(), 4);
        assert_eq!(c.unit(31).unwrap().order(), 2);
        assert_eq!(c.unit(1).unwrap().order(), 1);
        assert_eq!(ctx(3, 2).unit(2).unwrap().order(), 6);
        assert!(ctx(3, 2).unit(3).is_err());
    }

    #[test]
    fn unit_decompositions() {
        let c = ctx(2, 5);
        assert_eq!(
            c.unit(7).unwrap().decompose(),
            UnitDecomposition::TwoAdic { v: true, w: 2 }
        );
        assert_eq!(
            c.unit(1).unwrap().decompose(),
            UnitDecomposition::TwoAdic { v: false, w: 0 }
        );
        let c = ctx(3, 2);
        assert_eq!(
            c.unit(4).unwrap().decompose(),
            UnitDecomposition::Cyclic { k: 2 }
        );
    }

    #[test]
    fn decomposition_roundtrip_and_bijectivity() {
        for (p, e) in [(2, 3), (2, 6), (3, 3), (5, 2), (13, 1)] {
            let c = ctx(p, e);
            let mut seen = BTreeSet::new();
            for u in c.units() {
                let d = u.decompose();
                assert_eq!(d.recompose(c).unwrap(), u);
                assert!(seen.insert(d_key(d)), "{p}^{e}: duplicate coordinates");
            }
            assert_eq!(seen.len() as u64, c.unit_group_order());
        }
    }

    fn d_key(d: UnitDecomposition) -> (u8, u64) {
        match d {
            UnitDecomposition::TwoAdic { v, w } => (v as u8, w),
            UnitDecomposition::Cyclic { k } => (2, k),
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(ctx(3, 2)).unwrap().value(), 2);
        assert_eq!(primitive_root(ctx(5, 1)).unwrap().value(), 2);
        assert_eq!(primitive_root(ctx(2, 2)).unwrap().value(), 3);
        assert!(matches!(
            primitive_root(ctx(2, 3)),
            Err(Error::NoPrimitiveRoot { e: 3 })
        ));
    }

    #[test]
    fn power_shift_identity() {
        assert!(check_power_shift(5).unwrap());
        assert!(check_power_shift(6).unwrap());
        assert!(matches!(
            check_power_shift(4),
            Err(Error::ExponentTooSmall { .. })
        ));
        // spot value at e = 7, w = 3: shift 2^{e-5} = 4, offset 2^{e-3} = 16
        assert_eq!(pow_mod(5, 7, 32), (pow_mod(5, 3, 32) + 16) % 32);
        assert_eq!(pow_mod(5, 7, 32), 13);
    }

    #[test]
    fn decomposition_table_matches_algorithm() {
        for (p, e) in [(2, 6), (3, 3), (7, 2), (2, 2)] {
            let c = ctx(p, e);
            let table = UnitDecompTable::new(c);
            for u in c.units() {
                assert_eq!(table.decompose(u.value()), Some(u.decompose()));
            }
            // p itself is never a unit
            assert_eq!(table.decompose(c.p() % c.modulus()), None);
        }
    }

    #[test]
    fn minimal_unit_sets_closed_form() {
        let c = ctx(2, 4);
        assert!(is_minimal_unit_generating_set(c, &BTreeSet::from([15, 5])));
        assert!(!is_minimal_unit_generating_set(c, &BTreeSet::from([15, 9])));
        let c8 = ctx(2, 3);
        assert!(is_minimal_unit_generating_set(c8, &BTreeSet::from([7, 3])));
        let sets = minimal_unit_generating_sets(c8, 512).unwrap();
        assert_eq!(
            sets,
            vec![
                BTreeSet::from([3, 5]),
                BTreeSet::from([3, 7]),
                BTreeSet::from([5, 7]),
            ]
        );
        assert_eq!(minimal_unit_generating_sets(c, 512).unwrap().len(), 12);
        assert_eq!(
            minimal_unit_generating_sets(ctx(3, 1), 512).unwrap(),
            vec![BTreeSet::from([2])]
        );
        assert!(matches!(
            minimal_unit_generating_sets(ctx(2, 9), 256),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn minimal_monoid_sets_closed_form() {
        let c = ctx(3, 2);
        assert!(is_minimal_monoid_generating_set(c, &BTreeSet::from([6, 2])));
        assert!(!is_minimal_monoid_generating_set(c, &BTreeSet::from([3, 4])));
        assert!(is_minimal_monoid_generating_set(
            ctx(2, 4),
            &BTreeSet::from([2, 15, 5])
        ));
        // p^{e-1} choices of the non-unit element times the unit sets
        let sets = minimal_monoid_generating_sets(c, 512).unwrap();
        assert_eq!(sets.len(), 2 * 2); // φ(3) = 2 values of 3a, φ(6) = 2 generators
        for s in &sets {
            assert!(is_minimal_monoid_generating_set(c, s));
        }
    }
}
