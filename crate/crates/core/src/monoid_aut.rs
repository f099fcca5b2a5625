//! Automorphisms of the full multiplicative monoid (ℤ/pᵉℤ, ·).
//!
//! Every automorphism is a pair ψ = (r, φ): a unit r modulo p^{e−1} giving
//! the image p·r of p, and a liftable unit-group automorphism φ. Application
//! follows the canonical decomposition: p^u·b ↦ (p·r)^u·φ(b). The pairs
//! carry a semidirect-product structure which the crate verifies pointwise.

use std::fmt;

use crate::arith::{mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::residue::{ModulusContext, Residue, UnitResidue};
use crate::unit_aut::{liftable_unit_auts, closed_form_liftable_order, UnitAutParam};

/// Parameter (r, φ) of a monoid automorphism; r lives in the (p, e−1)
/// context and φ must lift (φ ∈ the liftable subgroup).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonoidAutParam {
    r: UnitResidue,
    phi: UnitAutParam,
}

impl MonoidAutParam {
    pub fn new(ctx: ModulusContext, r_value: u64, phi: UnitAutParam) -> Result<Self> {
        ctx.check_same(&phi.ctx())?;
        if !phi.is_liftable() {
            return Err(Error::InvalidParameter(format!(
                "{phi} does not lift to a monoid automorphism"
            )));
        }
        let lower = ctx.reduce_exponent(ctx.e().saturating_sub(1))?;
        Ok(Self {
            r: lower.unit(r_value)?,
            phi,
        })
    }

    pub fn identity(ctx: ModulusContext) -> Self {
        Self::new(ctx, 1, UnitAutParam::identity(ctx)).expect("identity parameters are valid")
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ctx())
    }

    pub fn ctx(&self) -> ModulusContext {
        self.phi.ctx()
    }

    /// The image of p is p·r; this is r as a canonical unit modulo p^{e−1}.
    pub fn r(&self) -> UnitResidue {
        self.r
    }

    /// The restriction to the unit group.
    pub fn restrict_to_units(&self) -> UnitAutParam {
        self.phi
    }

    /// Lift of r to an integer coprime to p (the canonical representative,
    /// or 1 out of the degenerate modulus-1 context).
    pub fn r_lift(&self) -> u64 {
        if self.r.ctx().modulus() == 1 {
            1
        } else {
            self.r.value()
        }
    }

    /// ψ(p^u·b) = (p·r)^u·φ(b); fixes 0 and restricts to φ on units.
    pub fn apply(&self, x: &Residue) -> Result<Residue> {
        let ctx = self.ctx();
        ctx.check_same(&x.ctx())?;
        let form = x.padic_decompose();
        let unit = ctx.unit(form.unit_part())?;
        let image_unit = self.phi.apply(&unit)?;
        let pr = mul_mod(ctx.p() % ctx.modulus().max(1), self.r_lift(), ctx.modulus().max(1));
        let factor = pow_mod(pr, form.valuation() as u64, ctx.modulus().max(1));
        Ok(ctx.residue(mul_mod(factor, image_unit.value(), ctx.modulus().max(1))))
    }

    /// The full map as a value-indexed vector (image of i at index i).
    pub fn full_map(&self) -> Vec<u64> {
        let ctx = self.ctx();
        let m = ctx.modulus();
        if m == 1 {
            return vec![0];
        }
        let phi_map = {
            let mut table = vec![0u64; m as usize];
            for (value, image) in self.phi.unit_map() {
                table[value as usize] = image;
            }
            table
        };
        let pr = mul_mod(ctx.p(), self.r_lift(), m);
        (0..m)
            .map(|x| {
                let form = ctx.residue(x).padic_decompose();
                let factor = pow_mod(pr, form.valuation() as u64, m);
                // the canonical unit part is a valid unit lift modulo p^e
                mul_mod(factor, phi_map[form.unit_part() as usize], m)
            })
            .collect()
    }

    /// Composition self ∘ other computed the oracle-grade way: evaluate the
    /// composite pointwise on the monoid generators and re-extract the
    /// parameter. (The closed-form law lives on [`SemidirectElement`].)
    pub fn compose_by_evaluation(&self, other: &Self) -> Result<Self> {
        let ctx = self.ctx();
        ctx.check_same(&other.ctx())?;
        Self::from_monoid_fn(ctx, |x| self.apply(&other.apply(x)?))
    }

    pub fn inverse(&self) -> Self {
        let phi_inv = self.phi.inverse();
        let reduced = phi_inv
            .reduce_to(self.ctx().e().saturating_sub(1))
            .expect("inverses of liftable automorphisms are liftable");
        let r_inv = if self.r.ctx().modulus() == 1 {
            0
        } else {
            reduced
                .apply(&self.r)
                .expect("same context")
                .inverse()
                .value()
        };
        Self::new(self.ctx(), r_inv, phi_inv).expect("inverse parameters are valid")
    }

    /// Recovers the parameter of a monoid automorphism from its values:
    /// r from the image of p, φ from the images of the unit generators.
    pub fn from_monoid_fn(
        ctx: ModulusContext,
        mut f: impl FnMut(&Residue) -> Result<Residue>,
    ) -> Result<Self> {
        let phi = UnitAutParam::from_unit_fn(ctx, |u| f(&u.as_residue())?.as_unit())?;
        let image_of_p = f(&ctx.residue(ctx.p() % ctx.modulus().max(1)))?;
        let r_value = if ctx.e() <= 1 {
            // p ≡ 0 and the absorbing element is fixed; r is trivial
            if image_of_p.value() != 0 {
                return Err(Error::InvalidParameter("the image of 0 must be 0".into()));
            }
            0
        } else {
            if image_of_p.value() % ctx.p() != 0 || image_of_p.value() == 0 {
                return Err(Error::InvalidParameter(format!(
                    "the image {} of p is not p times a unit",
                    image_of_p.value()
                )));
            }
            image_of_p.value() / ctx.p()
        };
        Self::new(ctx, r_value, phi)
    }
}

impl fmt::Display for MonoidAutParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} phi=[{}]", self.r_lift(), self.phi)
    }
}

/// Every monoid automorphism, r ascending then φ in parameter order; the
/// identity comes first.
pub fn monoid_auts(ctx: ModulusContext) -> Vec<MonoidAutParam> {
    let lower = ctx
        .reduce_exponent(ctx.e().saturating_sub(1))
        .expect("lowering the exponent is always possible");
    let liftable = liftable_unit_auts(ctx);
    let mut out = Vec::with_capacity(lower.units().len() * liftable.len());
    for r in lower.units() {
        for phi in &liftable {
            out.push(MonoidAutParam { r, phi: *phi });
        }
    }
    debug_assert_eq!(out.len() as u64, closed_form_monoid_aut_order(ctx));
    debug_assert!(out[0].is_identity());
    out
}

/// |Aut(ℤ/pᵉℤ, ·)| = φ(p^{e−1}) · |liftable subgroup|.
pub fn closed_form_monoid_aut_order(ctx: ModulusContext) -> u64 {
    let phi_lower = if ctx.e() >= 2 {
        ctx.modulus() / (ctx.p() * ctx.p()) * (ctx.p() - 1)
    } else {
        1
    };
    phi_lower * closed_form_liftable_order(ctx)
}

/// Element of the semidirect product U_{p^{e−1}} ⋊ (liftable subgroup), with
/// the closed-form multiplication (r, φ) ⋆ (r′, φ′) = (r·φ_{e−1}(r′), φ∘φ′).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SemidirectElement {
    r: UnitResidue,
    phi: UnitAutParam,
}

impl SemidirectElement {
    pub fn new(ctx: ModulusContext, r_value: u64, phi: UnitAutParam) -> Result<Self> {
        let param = MonoidAutParam::new(ctx, r_value, phi)?;
        Ok(Self {
            r: param.r,
            phi: param.phi,
        })
    }

    pub fn identity(ctx: ModulusContext) -> Self {
        let id = MonoidAutParam::identity(ctx);
        Self {
            r: id.r,
            phi: id.phi,
        }
    }

    pub fn ctx(&self) -> ModulusContext {
        self.phi.ctx()
    }

    pub fn r(&self) -> UnitResidue {
        self.r
    }

    pub fn phi(&self) -> UnitAutParam {
        self.phi
    }

    pub fn star(&self, other: &Self) -> Result<Self> {
        self.ctx().check_same(&other.ctx())?;
        let level = self.ctx().e().saturating_sub(1);
        let reduced = self.phi.reduce_to(level)?;
        let r = self.r.mul(&reduced.apply(&other.r)?)?;
        Ok(Self {
            r,
            phi: self.phi.compose(&other.phi)?,
        })
    }

    /// (φ⁻¹_{e−1}(r)⁻¹, φ⁻¹).
    pub fn inverse(&self) -> Result<Self> {
        let level = self.ctx().e().saturating_sub(1);
        let phi_inv = self.phi.inverse();
        let r = phi_inv.reduce_to(level)?.apply(&self.r)?.inverse();
        Ok(Self {
            r,
            phi: phi_inv,
        })
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},[{}])", self.r, self.phi)
    }
}

/// The bridge ψ_{r,φ} ↦ (r, φ) between monoid automorphisms and the
/// semidirect product (both directions are plain repackaging; the content is
/// that composition laws agree, which the verification suites check
/// pointwise).
pub fn to_semidirect(psi: &MonoidAutParam) -> SemidirectElement {
    SemidirectElement {
        r: psi.r,
        phi: psi.phi,
    }
}

pub fn from_semidirect(s: &SemidirectElement) -> MonoidAutParam {
    MonoidAutParam {
        r: s.r,
        phi: s.phi,
    }
}

/// The two distinguished subgroups of Aut(ℤ/pᵉℤ, ·): automorphisms fixing
/// every unit ({ψ_{r, id}}) and automorphisms fixing p ({ψ_{1, φ}}).
pub fn fixing_monoid_auts(ctx: ModulusContext) -> (Vec<MonoidAutParam>, Vec<MonoidAutParam>) {
    let lower = ctx
        .reduce_exponent(ctx.e().saturating_sub(1))
        .expect("lowering the exponent is always possible");
    let fix_units = lower
        .units()
        .into_iter()
        .map(|r| MonoidAutParam {
            r,
            phi: UnitAutParam::identity(ctx),
        })
        .collect();
    let one = lower.unit(1).expect("1 is a unit");
    let fix_p = liftable_unit_auts(ctx)
        .into_iter()
        .map(|phi| MonoidAutParam { r: one, phi })
        .collect();
    (fix_units, fix_p)
}

/// All four automorphisms of (ℤ/8ℤ, ·) fix the residue 4.
pub fn eight_automorphisms_fix_four() -> Result<bool> {
    let ctx = ModulusContext::new(2, 3)?;
    let four = ctx.residue(4);
    let auts = monoid_auts(ctx);
    if auts.len() != 4 {
        return Ok(false);
    }
    for psi in auts {
        if psi.apply(&four)? != four {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the monoid automorphism group abelian? Checked honestly on all pairs
/// by pointwise composition.
pub fn monoid_aut_group_abelian(ctx: ModulusContext) -> Result<bool> {
    let auts = monoid_auts(ctx);
    for (i, a) in auts.iter().enumerate() {
        for b in &auts[i + 1..] {
            if a.compose_by_evaluation(b)? != b.compose_by_evaluation(a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> ModulusContext {
        ModulusContext::new(p, e).unwrap()
    }

    #[test]
    fn apply_examples() {
        let c = ctx(2, 3);
        let psi = MonoidAutParam::new(c, 3, UnitAutParam::identity(c)).unwrap();
        assert_eq!(psi.apply(&c.residue(2)).unwrap().value(), 6);
        assert_eq!(psi.apply(&c.residue(4)).unwrap().value(), 4);
        assert_eq!(psi.apply(&c.residue(0)).unwrap().value(), 0);
        for u in c.units() {
            assert_eq!(psi.apply(&u.as_residue()).unwrap(), u.as_residue());
        }
        // identity fixes all residues
        let id = MonoidAutParam::identity(c);
        for x in 0..8 {
            assert_eq!(id.apply(&c.residue(x)).unwrap().value(), x);
        }
        // odd case: ψ_{2, χ_5} on ℤ/9ℤ
        let c9 = ctx(3, 2);
        let psi = MonoidAutParam::new(c9, 2, UnitAutParam::power(c9, 5).unwrap()).unwrap();
        assert_eq!(psi.apply(&c9.residue(3)).unwrap().value(), 6);
        assert_eq!(psi.apply(&c9.residue(2)).unwrap().value(), 5);
        assert_eq!(psi.apply(&c9.residue(0)).unwrap().value(), 0);
        // it is a bijection on all nine residues
        let mut seen: Vec<u64> = (0..9)
            .map(|x| psi.apply(&c9.residue(x)).unwrap().value())
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn parameter_validation() {
        let c = ctx(2, 5);
        let non_liftable = UnitAutParam::triple(c, 0, true, 1).unwrap();
        assert!(MonoidAutParam::new(c, 1, non_liftable).is_err());
        assert!(MonoidAutParam::new(c, 2, UnitAutParam::identity(c)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monoid_auts(ctx(3, 1)).len(), 1);
        assert_eq!(monoid_auts(ctx(2, 3)).len(), 4);
        assert_eq!(monoid_auts(ctx(2, 4)).len(), 16);
        assert_eq!(monoid_auts(ctx(5, 2)).len(), 32);
        assert_eq!(monoid_auts(ctx(2, 1)).len(), 1);
        assert_eq!(monoid_auts(ctx(2, 2)).len(), 1);
        assert_eq!(closed_form_monoid_aut_order(ctx(2, 5)), 64);
        assert_eq!(closed_form_monoid_aut_order(ctx(3, 2)), 4);
    }

    #[test]
    fn restriction_agrees_on_units() {
        for (p, e) in [(2, 4), (3, 2), (5, 1)] {
            let c = ctx(p, e);
            for psi in monoid_auts(c) {
                let phi = psi.restrict_to_units();
                for u in c.units() {
                    assert_eq!(
                        psi.apply(&u.as_residue()).unwrap().value(),
                        phi.apply(&u).unwrap().value()
                    );
                }
            }
        }
    }

    #[test]
    fn full_map_matches_apply() {
        for (p, e) in [(2, 4), (3, 2), (2, 1), (5, 1)] {
            let c = ctx(p, e);
            for psi in monoid_auts(c) {
                let map = psi.full_map();
                for x in 0..c.modulus() {
                    assert_eq!(map[x as usize], psi.apply(&c.residue(x)).unwrap().value());
                }
            }
        }
    }

    #[test]
    fn composition_by_evaluation() {
        let c = ctx(3, 2);
        let chi5 = UnitAutParam::power(c, 5).unwrap();
        let a = MonoidAutParam::new(c, 2, chi5).unwrap();
        let b = MonoidAutParam::new(c, 2, UnitAutParam::identity(c)).unwrap();
        let composed = a.compose_by_evaluation(&b).unwrap();
        // ([2]·φ₁([2]), χ₅∘id): φ reduces to the identity at level 1
        assert_eq!(composed.r().value(), 1);
        assert_eq!(composed.restrict_to_units(), chi5);
        // ψ ∘ ψ⁻¹ = id, everywhere
        for (p, e) in [(2, 4), (3, 2), (2, 3), (5, 1), (2, 2)] {
            let c = ctx(p, e);
            for psi in monoid_auts(c) {
                assert!(psi.compose_by_evaluation(&psi.inverse()).unwrap().is_identity());
                assert!(psi.inverse().compose_by_evaluation(&psi).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn semidirect_law_matches_pointwise_composition() {
        for (p, e) in [(2, 3), (2, 4), (2, 5), (3, 2), (5, 1), (3, 3)] {
            let c = ctx(p, e);
            let auts = monoid_auts(c);
            for a in &auts {
                for b in &auts {
                    let pointwise = a.compose_by_evaluation(b).unwrap();
                    let closed = to_semidirect(a).star(&to_semidirect(b)).unwrap();
                    assert_eq!(to_semidirect(&pointwise), closed, "{p}^{e}: {a} ∘ {b}");
                }
            }
        }
    }

    #[test]
    fn semidirect_inverse_law() {
        for (p, e) in [(2, 5), (3, 2), (2, 3)] {
            let c = ctx(p, e);
            let id = SemidirectElement::identity(c);
            for psi in monoid_auts(c) {
                let s = to_semidirect(&psi);
                assert_eq!(s.star(&s.inverse().unwrap()).unwrap(), id);
                assert_eq!(s.inverse().unwrap().star(&s).unwrap(), id);
            }
        }
    }

    #[test]
    fn extraction_roundtrip() {
        for (p, e) in [(2, 4), (2, 3), (3, 2), (5, 1), (2, 1)] {
            let c = ctx(p, e);
            for psi in monoid_auts(c) {
                let recovered = MonoidAutParam::from_monoid_fn(c, |x| psi.apply(x)).unwrap();
                assert_eq!(recovered, psi);
            }
        }
    }

    #[test]
    fn fixed_point_four() {
        assert!(eight_automorphisms_fix_four().unwrap());
    }

    #[test]
    fn commutativity_flags() {
        // order 4 forces commutativity here: the twist dies at level e-1
        assert!(monoid_aut_group_abelian(ctx(3, 2)).unwrap());
        assert!(!monoid_aut_group_abelian(ctx(3, 3)).unwrap());
        assert!(!monoid_aut_group_abelian(ctx(5, 2)).unwrap());
        assert!(!monoid_aut_group_abelian(ctx(2, 5)).unwrap());
        assert!(monoid_aut_group_abelian(ctx(2, 3)).unwrap());
        assert!(monoid_aut_group_abelian(ctx(2, 4)).unwrap());
    }

    #[test]
    fn fixing_subgroups() {
        let c9 = ctx(3, 2);
        let (fix_units, fix_p) = fixing_monoid_auts(c9);
        assert_eq!((fix_units.len(), fix_p.len()), (2, 2));
        let mut products: Vec<MonoidAutParam> = fix_units
            .iter()
            .flat_map(|a| fix_p.iter().map(move |b| a.compose_by_evaluation(b).unwrap()))
            .collect();
        products.sort();
        products.dedup();
        assert_eq!(products.len(), 4);
        let id = MonoidAutParam::identity(c9);
        assert!(fix_units.contains(&id) && fix_p.contains(&id));
        // pointwise fixing
        for psi in &fix_units {
            for u in c9.units() {
                assert_eq!(psi.apply(&u.as_residue()).unwrap(), u.as_residue());
            }
        }
        for psi in &fix_p {
            assert_eq!(psi.apply(&c9.residue(3)).unwrap().value(), 3);
        }
        // (2,5): sizes 8 and 8, product of size 64
        let c32 = ctx(2, 5);
        let (fix_units, fix_p) = fixing_monoid_auts(c32);
        assert_eq!((fix_units.len(), fix_p.len()), (8, 8));
        let mut products: Vec<MonoidAutParam> = fix_units
            .iter()
            .flat_map(|a| fix_p.iter().map(move |b| a.compose_by_evaluation(b).unwrap()))
            .collect();
        products.sort();
        products.dedup();
        assert_eq!(products.len(), 64);
    }
}
