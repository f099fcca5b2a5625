//! Closed-form parameterization of Aut(U_{pᵉ}, ·): application, composition,
//! inversion, enumeration, the subgroup of automorphisms that lift to the
//! full monoid, and reduction between prime-power levels.

use std::fmt;

use crate::arith::{gcd, inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::residue::{
    primitive_root, two_adic_unit, discrete_log, ModulusContext, UnitDecomposition, UnitResidue,
};

/// Parameter family of a unit-group automorphism. Which family applies is
/// determined by the context:
///
/// - `Power { t }`: cyclic unit groups (odd p, and p = 2 with e ≤ 2), the
///   power map a ↦ a^t with gcd(t, φ(pᵉ)) = 1; the exponent is canonical
///   modulo the group order, so the trivial group carries t = 0.
/// - `Perm3 { sigma }`: pᵉ = 8 only. The three non-identity units −1, 5, −5
///   are labeled 0, 1, 2 and permuted by `sigma`.
/// - `Triple { t1, t2, t3 }`: p = 2, e ≥ 4. Sends −1 ↦ −5^{t1} and
///   5 ↦ (−1)^{t2} 5^{t3}, with t1 ∈ {0, 2^{e−3}} and t3 odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitAutKind {
    Power { t: u64 },
    Perm3 { sigma: [u8; 3] },
    Triple { t1: u64, t2: bool, t3: u64 },
}

/// An automorphism of (U_{pᵉ}, ·), as a validated parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitAutParam {
    ctx: ModulusContext,
    kind: UnitAutKind,
}

/// Residue values of the three non-identity units of U_8 in label order:
/// label 0 ↦ −1, label 1 ↦ 5, label 2 ↦ −5.
fn label_values(ctx: ModulusContext) -> [u64; 3] {
    [ctx.modulus() - 1, 5, ctx.modulus() - 5]
}

impl UnitAutParam {
    /// Power-map automorphism for a cyclic unit group.
    pub fn power(ctx: ModulusContext, t: u64) -> Result<Self> {
        if ctx.p() == 2 && ctx.e() >= 3 {
            return Err(Error::InvalidParameter(format!(
                "the unit group modulo {ctx} is not cyclic"
            )));
        }
        let order = ctx.unit_group_order();
        let t = t % order;
        if gcd(t, order) != 1 && order > 1 {
            return Err(Error::InvalidParameter(format!(
                "exponent {t} is not coprime to the group order {order}"
            )));
        }
        Ok(Self {
            ctx,
            kind: UnitAutKind::Power { t },
        })
    }

    /// Label-permutation automorphism of U_8.
    pub fn perm3(ctx: ModulusContext, sigma: [u8; 3]) -> Result<Self> {
        if ctx.modulus() != 8 {
            return Err(Error::InvalidParameter(format!(
                "label permutations apply to modulus 8, not {ctx}"
            )));
        }
        let mut seen = [false; 3];
        for &s in &sigma {
            if s > 2 || seen[s as usize] {
                return Err(Error::InvalidParameter(format!(
                    "{sigma:?} is not a permutation of the three labels"
                )));
            }
            seen[s as usize] = true;
        }
        Ok(Self {
            ctx,
            kind: UnitAutKind::Perm3 { sigma },
        })
    }

    /// Generator-image automorphism of U_{2ᵉ}, e ≥ 4.
    pub fn triple(ctx: ModulusContext, t1: u64, t2: bool, t3: u64) -> Result<Self> {
        if ctx.p() != 2 || ctx.e() < 4 {
            return Err(Error::InvalidParameter(format!(
                "triple parameters apply to p = 2, e >= 4, not {ctx}"
            )));
        }
        let half = ctx.modulus() / 4;
        let pivot = half / 2; // 2^{e-3}
        if t1 != 0 && t1 != pivot {
            return Err(Error::InvalidParameter(format!(
                "t1 must lie in {{0, {pivot}}}, got {t1}"
            )));
        }
        let t3 = t3 % half;
        if t3 % 2 == 0 {
            return Err(Error::InvalidParameter(format!("t3 must be odd, got {t3}")));
        }
        Ok(Self {
            ctx,
            kind: UnitAutKind::Triple { t1, t2, t3 },
        })
    }

    pub fn identity(ctx: ModulusContext) -> Self {
        if ctx.modulus() == 8 {
            Self {
                ctx,
                kind: UnitAutKind::Perm3 { sigma: [0, 1, 2] },
            }
        } else if ctx.p() == 2 && ctx.e() >= 4 {
            Self {
                ctx,
                kind: UnitAutKind::Triple {
                    t1: 0,
                    t2: false,
                    t3: 1,
                },
            }
        } else {
            Self {
                ctx,
                kind: UnitAutKind::Power {
                    t: 1 % ctx.unit_group_order(),
                },
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ctx)
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn kind(&self) -> &UnitAutKind {
        &self.kind
    }

    /// Image of a unit under this automorphism.
    pub fn apply(&self, a: &UnitResidue) -> Result<UnitResidue> {
        self.ctx.check_same(&a.ctx())?;
        match self.kind {
            UnitAutKind::Power { t } => Ok(a.pow(t)),
            UnitAutKind::Perm3 { sigma } => {
                if a.value() == 1 {
                    return Ok(*a);
                }
                let labels = label_values(self.ctx);
                let label = labels
                    .iter()
                    .position(|&v| v == a.value())
                    .expect("every unit of U_8 other than 1 carries a label");
                self.ctx.unit(labels[sigma[label] as usize])
            }
            UnitAutKind::Triple { t1, t2, t3 } => {
                let UnitDecomposition::TwoAdic { v, w } = a.decompose() else {
                    unreachable!("e >= 4 units decompose over (-1, 5)")
                };
                Ok(self.apply_coordinates(v, w, t1, t2, t3))
            }
        }
    }

    /// (−1)^v 5^w ↦ (−1)^{v + t2·w} 5^{t1·v + t3·w}.
    fn apply_coordinates(&self, v: bool, w: u64, t1: u64, t2: bool, t3: u64) -> UnitResidue {
        let half = self.ctx.modulus() / 4;
        let sign = v ^ (t2 && w % 2 == 1);
        let mut exp = mul_mod(t3, w, half);
        if v {
            exp = (exp + t1) % half;
        }
        two_adic_unit(self.ctx, sign, exp)
    }

    /// Composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let kind = match (self.kind, other.kind) {
            (UnitAutKind::Power { t }, UnitAutKind::Power { t: t2 }) => UnitAutKind::Power {
                t: mul_mod(t, t2, self.ctx.unit_group_order()),
            },
            (UnitAutKind::Perm3 { sigma }, UnitAutKind::Perm3 { sigma: tau }) => {
                UnitAutKind::Perm3 {
                    sigma: [
                        sigma[tau[0] as usize],
                        sigma[tau[1] as usize],
                        sigma[tau[2] as usize],
                    ],
                }
            }
            (
                UnitAutKind::Triple { t1, t2, t3 },
                UnitAutKind::Triple {
                    t1: u1,
                    t2: u2,
                    t3: u3,
                },
            ) => {
                let half = self.ctx.modulus() / 4;
                // (t ∘ u): -1 ↦ -5^{t1+u1}; 5 ↦ (-1)^{t2+u2} 5^{t3·u3 + u2·t1}
                let mut new_t3 = mul_mod(t3, u3, half);
                if u2 {
                    new_t3 = (new_t3 + t1) % half;
                }
                UnitAutKind::Triple {
                    t1: (t1 + u1) % half,
                    t2: t2 ^ u2,
                    t3: new_t3,
                }
            }
            _ => unreachable!("parameter families are pinned by the shared context"),
        };
        Ok(Self {
            ctx: self.ctx,
            kind,
        })
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            UnitAutKind::Power { t } => UnitAutKind::Power {
                t: inv_mod(t, self.ctx.unit_group_order())
                    .expect("parameter exponents are coprime to the group order"),
            },
            UnitAutKind::Perm3 { sigma } => {
                let mut inv = [0u8; 3];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s as usize] = i as u8;
                }
                UnitAutKind::Perm3 { sigma: inv }
            }
            UnitAutKind::Triple { t1, t2, t3 } => {
                let half = self.ctx.modulus() / 4;
                let t3_inv = inv_mod(t3, half).expect("t3 is odd");
                let correction = if t2 { t1 } else { 0 };
                UnitAutKind::Triple {
                    t1,
                    t2,
                    t3: mul_mod(t3_inv, (1 + half - correction) % half, half),
                }
            }
        };
        Self {
            ctx: self.ctx,
            kind,
        }
    }

    /// Does this automorphism lift to an automorphism of the full monoid
    /// (equivalently: does it induce an automorphism of U_{p^f} for every
    /// f ≤ e)? Always for odd p and e ≤ 2; for pᵉ = 8 exactly the two maps
    /// fixing 5; for p = 2, e ≥ 4 exactly those with t2 = 0.
    pub fn is_liftable(&self) -> bool {
        match self.kind {
            UnitAutKind::Power { .. } => true,
            UnitAutKind::Perm3 { sigma } => sigma[1] == 1,
            UnitAutKind::Triple { t2, .. } => !t2,
        }
    }

    /// The automorphism of U_{p^f} induced by this one (the reduction
    /// homomorphism applied at level f). Requires liftability.
    pub fn reduce_to(&self, f: u32) -> Result<UnitAutParam> {
        if !self.is_liftable() {
            return Err(Error::InvalidParameter(format!(
                "{self} does not induce automorphisms at lower levels"
            )));
        }
        let target = self.ctx.reduce_exponent(f)?;
        if f == self.ctx.e() {
            return Ok(*self);
        }
        match self.kind {
            UnitAutKind::Power { t } => Self::power(target, t % target.unit_group_order()),
            UnitAutKind::Perm3 { .. } => Ok(Self::identity(target)),
            UnitAutKind::Triple { t1, t3, .. } => {
                if f >= 4 {
                    let half = target.modulus() / 4;
                    Self::triple(target, t1 % half, false, t3 % half)
                } else {
                    Ok(Self::identity(target))
                }
            }
        }
    }

    /// Recovers the parameter of an automorphism from its values on the
    /// canonical generators; `f` must act as an automorphism of the unit
    /// group.
    pub fn from_unit_fn(
        ctx: ModulusContext,
        mut f: impl FnMut(&UnitResidue) -> Result<UnitResidue>,
    ) -> Result<Self> {
        if ctx.p() == 2 && ctx.e() >= 4 {
            let minus_one = ctx.unit(ctx.modulus() - 1)?;
            let five = ctx.unit(5)?;
            let UnitDecomposition::TwoAdic { v, w: t1 } = f(&minus_one)?.decompose() else {
                unreachable!()
            };
            if !v {
                return Err(Error::InvalidParameter(
                    "image of -1 does not have the form -5^t1".into(),
                ));
            }
            let UnitDecomposition::TwoAdic { v: t2, w: t3 } = f(&five)?.decompose() else {
                unreachable!()
            };
            Self::triple(ctx, t1, t2, t3)
        } else if ctx.modulus() == 8 {
            let labels = label_values(ctx);
            let position = |v: u64| -> Result<u8> {
                labels
                    .iter()
                    .position(|&x| x == v)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::InvalidParameter("image fixes too much of U_8".into()))
            };
            let img0 = f(&ctx.unit(labels[0])?)?;
            let img1 = f(&ctx.unit(labels[1])?)?;
            let img2 = img0.mul(&img1)?; // −5 = (−1)·5 and f is a homomorphism
            Self::perm3(ctx, [position(img0.value())?, position(img1.value())?, position(img2.value())?])
        } else {
            let g = primitive_root(ctx)?;
            let image = f(&g)?;
            let t = discrete_log(&g, &image).ok_or_else(|| {
                Error::InvalidParameter("image of the primitive root is not a power of it".into())
            })?;
            Self::power(ctx, t)
        }
    }

    /// The full map on units as (value, image) pairs sorted by value,
    /// computed incrementally (no per-element discrete logarithms).
    pub fn unit_map(&self) -> Vec<(u64, u64)> {
        let ctx = self.ctx;
        let m = ctx.modulus();
        let mut pairs: Vec<(u64, u64)> = match self.kind {
            UnitAutKind::Power { t } => {
                let g = primitive_root(ctx).expect("cyclic case");
                let gt = g.pow(t);
                let mut cur = 1 % m.max(1);
                let mut img = cur;
                (0..ctx.unit_group_order())
                    .map(|_| {
                        let pair = (cur, img);
                        cur = mul_mod(cur, g.value(), m.max(1));
                        img = mul_mod(img, gt.value(), m.max(1));
                        pair
                    })
                    .collect()
            }
            UnitAutKind::Perm3 { sigma } => {
                let labels = label_values(ctx);
                let mut pairs = vec![(1, 1)];
                for (i, &v) in labels.iter().enumerate() {
                    pairs.push((v, labels[sigma[i] as usize]));
                }
                pairs
            }
            UnitAutKind::Triple { t1, t2, t3 } => {
                let half = m / 4;
                let five_t3 = pow_mod(5, t3, m);
                let mut pairs = Vec::with_capacity(m as usize / 2);
                for v in [false, true] {
                    let mut five_w = 1u64;
                    let mut mag = if v { pow_mod(5, t1, m) } else { 1 };
                    for w in 0..half {
                        let value = if v { m - five_w } else { five_w };
                        let sign = v ^ (t2 && w % 2 == 1);
                        let image = if sign { m - mag } else { mag };
                        pairs.push((value, image));
                        five_w = mul_mod(five_w, 5, m);
                        mag = mul_mod(mag, five_t3, m);
                    }
                }
                pairs
            }
        };
        pairs.sort_unstable();
        pairs
    }
}

impl fmt::Display for UnitAutParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            UnitAutKind::Power { t } => write!(f, "t={t}"),
            UnitAutKind::Perm3 { sigma } => {
                write!(f, "sigma=[{},{},{}]", sigma[0] + 1, sigma[1] + 1, sigma[2] + 1)
            }
            UnitAutKind::Triple { t1, t2, t3 } => write!(f, "({t1},{},{t3})", u8::from(t2)),
        }
    }
}

/// The full automorphism group of (U_{pᵉ}, ·) as an explicit parameter list.
#[derive(Debug, Clone)]
pub struct AutGroupDescriptor {
    ctx: ModulusContext,
    params: Vec<UnitAutParam>,
}

impl AutGroupDescriptor {
    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn params(&self) -> &[UnitAutParam] {
        &self.params
    }

    pub fn order(&self) -> u64 {
        self.params.len() as u64
    }
}

/// Every automorphism of (U_{pᵉ}, ·), in deterministic (lexicographic
/// parameter) order with the identity first.
pub fn unit_auts(ctx: ModulusContext) -> AutGroupDescriptor {
    let mut params = Vec::new();
    if ctx.modulus() == 8 {
        let mut sigmas: Vec<[u8; 3]> = Vec::with_capacity(6);
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    if a != b && b != c && a != c {
                        sigmas.push([a, b, c]);
                    }
                }
            }
        }
        for sigma in sigmas {
            params.push(UnitAutParam::perm3(ctx, sigma).expect("valid permutation"));
        }
    } else if ctx.p() == 2 && ctx.e() >= 4 {
        let half = ctx.modulus() / 4;
        for t1 in [0, half / 2] {
            for t2 in [false, true] {
                for t3 in (1..half).step_by(2) {
                    params.push(UnitAutParam::triple(ctx, t1, t2, t3).expect("valid triple"));
                }
            }
        }
        // keep the identity (0,0,1) first: lexicographic on (t1, t2, t3)
        params.sort();
    } else {
        let order = ctx.unit_group_order();
        for t in 0..order.max(1) {
            if gcd(t, order) == 1 || order == 1 {
                params.push(UnitAutParam::power(ctx, t).expect("coprime exponent"));
            }
        }
    }
    debug_assert_eq!(params.len() as u64, closed_form_unit_aut_order(ctx));
    debug_assert!(params[0].is_identity());
    AutGroupDescriptor { ctx, params }
}

/// The subgroup of automorphisms that lift to the monoid, in enumeration
/// order.
pub fn liftable_unit_auts(ctx: ModulusContext) -> Vec<UnitAutParam> {
    unit_auts(ctx)
        .params()
        .iter()
        .copied()
        .filter(UnitAutParam::is_liftable)
        .collect()
}

/// |Aut(U_{pᵉ}, ·)| in closed form: φ(p^{e−1}(p−1)) for odd p; 1 for e ≤ 2;
/// 6 for pᵉ = 8; 2^{e−1} for p = 2, e ≥ 4.
pub fn closed_form_unit_aut_order(ctx: ModulusContext) -> u64 {
    if ctx.p() == 2 {
        return match ctx.e() {
            0..=2 => 1,
            3 => 6,
            e => 1 << (e - 1),
        };
    }
    let phi_of_p_power = if ctx.e() >= 2 {
        ctx.modulus() / (ctx.p() * ctx.p()) * (ctx.p() - 1)
    } else {
        1
    };
    phi_of_p_power * crate::arith::euler_phi(ctx.p() - 1)
}

/// |liftable subgroup| in closed form.
pub fn closed_form_liftable_order(ctx: ModulusContext) -> u64 {
    if ctx.p() == 2 {
        return match ctx.e() {
            0..=2 => 1,
            3 => 2,
            e => 1 << (e - 2),
        };
    }
    closed_form_unit_aut_order(ctx)
}

/// Which generator of U_{2ᵉ} an automorphism is required to fix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedUnitGenerator {
    MinusOne,
    Five,
}

/// The subgroup of Aut(U_{2ᵉ}, ·) fixing the given generator (p = 2, e ≥ 4):
/// {(0, t2, t3)} for −1 and {(t1, 0, 1)} for 5. Their pointwise composition
/// is the whole automorphism group.
pub fn fixing_unit_auts(
    ctx: ModulusContext,
    fixed: FixedUnitGenerator,
) -> Result<Vec<UnitAutParam>> {
    if ctx.p() != 2 || ctx.e() < 4 {
        return Err(Error::InvalidParameter(format!(
            "fixing subgroups are described for p = 2, e >= 4, not {ctx}"
        )));
    }
    let half = ctx.modulus() / 4;
    let mut params = Vec::new();
    match fixed {
        FixedUnitGenerator::MinusOne => {
            for t2 in [false, true] {
                for t3 in (1..half).step_by(2) {
                    params.push(UnitAutParam::triple(ctx, 0, t2, t3)?);
                }
            }
        }
        FixedUnitGenerator::Five => {
            for t1 in [0, half / 2] {
                params.push(UnitAutParam::triple(ctx, t1, false, 1)?);
            }
        }
    }
    params.sort();
    Ok(params)
}
