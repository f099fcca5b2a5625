//! Explicit structure of Aut(ℤ/pᵉℤ, ·) in each regime: the concrete target
//! group, the coordinate map onto it, a pairwise homomorphism check of that
//! map, and (within bounds) an independent table-isomorphism certificate.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{gcd, mul_mod};
use crate::error::Result;
use crate::group_table::{groups_isomorphic, GroupTable};
use crate::monoid_aut::{monoid_auts, to_semidirect, MonoidAutParam, SemidirectElement};
use crate::report::{all_passed, Check};
use crate::residue::{discrete_log, primitive_root, ModulusContext, UnitDecomposition};
use crate::unit_aut::UnitAutKind;

#[derive(Debug, Clone, Serialize)]
pub struct RegimeIsoReport {
    pub p: u64,
    pub e: u32,
    pub regime: String,
    pub aut_order: u64,
    pub target: String,
    pub checks: Vec<Check>,
    /// Some(true/false) when the table search ran; None when the group was
    /// larger than the configured table bound.
    pub table_certificate: Option<bool>,
    pub witness_sample: Vec<(String, String)>,
}

impl RegimeIsoReport {
    pub fn verified(&self) -> bool {
        all_passed(&self.checks) && self.table_certificate != Some(false)
    }
}

/// The four-component coordinates a monoid automorphism maps to, together
/// with the target group law on them.
struct TargetModel {
    regime: String,
    target: String,
    coords: Box<dyn Fn(&SemidirectElement) -> [u64; 4]>,
    op: Box<dyn Fn(&[u64; 4], &[u64; 4]) -> [u64; 4]>,
    table: Option<GroupTable>,
}

fn model_for(ctx: ModulusContext, want_table: bool) -> Result<TargetModel> {
    let p = ctx.p();
    let e = ctx.e();
    if p == 2 && e <= 2 {
        return Ok(TargetModel {
            regime: "trivial".into(),
            target: "trivial group".into(),
            coords: Box::new(|_| [0; 4]),
            op: Box::new(|_, _| [0; 4]),
            table: want_table.then(|| GroupTable::cyclic(1)),
        });
    }
    if p != 2 && e == 1 {
        let modulus = p - 1;
        return Ok(TargetModel {
            regime: "odd prime".into(),
            target: format!("U_{modulus} (units modulo {modulus})"),
            coords: Box::new(move |s| {
                let UnitAutKind::Power { t } = *s.phi().kind() else {
                    unreachable!("odd contexts carry power parameters")
                };
                [t, 0, 0, 0]
            }),
            op: Box::new(move |a, b| [mul_mod(a[0], b[0], modulus), 0, 0, 0]),
            table: want_table.then(|| GroupTable::units_mod(modulus)),
        });
    }
    if p != 2 {
        let lower = ctx.reduce_exponent(e - 1)?;
        let m1 = lower.unit_group_order(); // p^{e-2}(p-1)
        let m2 = ctx.unit_group_order(); // p^{e-1}(p-1)
        let root = primitive_root(lower)?;
        return Ok(TargetModel {
            regime: "odd prime power".into(),
            target: format!("Z/{m1} x| U_{m2}"),
            coords: Box::new(move |s| {
                let UnitAutKind::Power { t } = *s.phi().kind() else {
                    unreachable!("odd contexts carry power parameters")
                };
                let s_exp = discrete_log(&root, &s.r())
                    .expect("the primitive root generates the lower unit group");
                [s_exp, t, 0, 0]
            }),
            op: Box::new(move |a, b| {
                [
                    (a[0] + mul_mod(b[0], a[1], m1)) % m1,
                    mul_mod(a[1], b[1], m2),
                    0,
                    0,
                ]
            }),
            table: if want_table {
                let action_units = GroupTable::units_mod(m2);
                let values: Vec<u64> = (0..m2).filter(|&v| gcd(v, m2) == 1).collect();
                Some(GroupTable::semidirect_product(
                    &GroupTable::cyclic(m1),
                    &action_units,
                    |h, x| (mul_mod(values[h], x as u64, m1)) as usize,
                )?)
            } else {
                None
            },
        });
    }
    if e == 3 {
        return Ok(TargetModel {
            regime: "two cubed".into(),
            target: "Z/2 x Z/2".into(),
            coords: Box::new(|s| {
                let fixes_five = s.phi().is_identity();
                [u64::from(s.r().value() == 3), u64::from(!fixes_five), 0, 0]
            }),
            op: Box::new(|a, b| [a[0] ^ b[0], a[1] ^ b[1], 0, 0]),
            table: want_table.then(GroupTable::klein_four),
        });
    }
    // p = 2, e >= 4
    let v_mod = 1u64 << (e - 3); // order of 5 modulo 2^{e-1}
    let t_mod = 1u64 << (e - 2);
    let pivot = 1u64 << (e - 3);
    return Ok(TargetModel {
        regime: "two power".into(),
        target: format!("Z/2 x Z/2 x (Z/2^{} x| U_2^{})", e - 3, e - 2),
        coords: Box::new(move |s| {
            let UnitAutKind::Triple { t1, t2, t3 } = *s.phi().kind() else {
                unreachable!("two-power contexts carry triple parameters")
            };
            debug_assert!(!t2, "liftable parameters have t2 = 0");
            let UnitDecomposition::TwoAdic { v: u, w: v } = s.r().decompose() else {
                unreachable!("e - 1 >= 3")
            };
            [u64::from(u), u64::from(t1 == pivot), v, t3]
        }),
        op: Box::new(move |a, b| {
            [
                a[0] ^ b[0],
                a[1] ^ b[1],
                (a[2] + mul_mod(a[3], b[2], v_mod)) % v_mod,
                mul_mod(a[3], b[3], t_mod),
            ]
        }),
        table: if want_table {
            let action_units = GroupTable::units_mod(1 << (e - 2));
            let values: Vec<u64> = (1..(1u64 << (e - 2))).step_by(2).collect();
            let inner = GroupTable::semidirect_product(
                &GroupTable::cyclic(v_mod),
                &action_units,
                |h, x| (mul_mod(values[h], x as u64, v_mod)) as usize,
            )?;
            let z2 = GroupTable::cyclic(2);
            Some(GroupTable::direct_product(
                &z2,
                &GroupTable::direct_product(&z2, &inner),
            ))
        } else {
            None
        },
    });
}

/// Builds the explicit regime report for one context: names the regime and
/// target group, checks the coordinate map is a bijective homomorphism over
/// every parameter pair, and certifies a table isomorphism when the group
/// order does not exceed `table_bound`.
pub fn regime_report(ctx: ModulusContext, table_bound: usize) -> Result<RegimeIsoReport> {
    let auts = monoid_auts(ctx);
    let n = auts.len();
    let want_table = n <= table_bound;
    let model = model_for(ctx, want_table)?;
    let elements: Vec<SemidirectElement> = auts.iter().map(to_semidirect).collect();
    let coords: Vec<[u64; 4]> = elements.iter().map(|s| (model.coords)(s)).collect();
    let mut checks = Vec::new();

    let mut seen: Vec<[u64; 4]> = coords.clone();
    seen.sort_unstable();
    seen.dedup();
    checks.push(Check::new("coordinate_map_injective", seen.len() == n));
    if let Some(table) = &model.table {
        checks.push(Check::new(
            "target_order_matches",
            table.size() == n,
        ));
    }

    // homomorphism of the coordinate map against the semidirect law, on all
    // pairs (or a fixed stride sample when the group is very large)
    let stride = if n > 2048 { n / 2048 + 1 } else { 1 };
    let mut hom_ok = true;
    'outer: for i in (0..n).step_by(stride) {
        for j in (0..n).step_by(stride) {
            let product = elements[i].star(&elements[j])?;
            if (model.coords)(&product) != (model.op)(&coords[i], &coords[j]) {
                hom_ok = false;
                break 'outer;
            }
        }
    }
    checks.push(Check::new(
        if stride == 1 {
            "coordinate_map_homomorphism_all_pairs"
        } else {
            "coordinate_map_homomorphism_sampled"
        },
        hom_ok,
    ));

    let table_certificate = match &model.table {
        Some(table) if want_table => {
            let aut_table = semidirect_group_table(&elements)?;
            Some(groups_isomorphic(&aut_table, table, table_bound)?.is_some())
        }
        _ => None,
    };

    let witness_sample = elements
        .iter()
        .zip(&coords)
        .take(4)
        .map(|(s, c)| (s.to_string(), format!("[{},{},{},{}]", c[0], c[1], c[2], c[3])))
        .collect();

    Ok(RegimeIsoReport {
        p: ctx.p(),
        e: ctx.e(),
        regime: model.regime,
        aut_order: n as u64,
        target: model.target,
        checks,
        table_certificate,
        witness_sample,
    })
}

/// The automorphism group as an explicit table under the semidirect law.
pub fn semidirect_group_table(elements: &[SemidirectElement]) -> Result<GroupTable> {
    let index: BTreeMap<SemidirectElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i))
        .collect();
    let n = elements.len();
    let mut products = vec![0usize; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            products[i * n + j] = index[&a.star(b)?];
        }
    }
    GroupTable::from_op(
        elements.iter().map(|s| s.to_string()).collect(),
        |i, j| products[i * n + j],
    )
}

/// The monoid automorphism group as a table, composed pointwise (oracle
/// grade; quadratic in the group order times evaluation cost).
pub fn monoid_aut_group_table(ctx: ModulusContext, table_bound: usize) -> Result<GroupTable> {
    let auts = monoid_auts(ctx);
    if auts.len() > table_bound {
        return Err(crate::error::Error::BoundExceeded {
            modulus: auts.len() as u64,
            bound: table_bound as u64,
        });
    }
    let index: BTreeMap<MonoidAutParam, usize> =
        auts.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let n = auts.len();
    let mut products = vec![0usize; n * n];
    for (i, a) in auts.iter().enumerate() {
        for (j, b) in auts.iter().enumerate() {
            products[i * n + j] = index[&a.compose_by_evaluation(b)?];
        }
    }
    GroupTable::from_op(auts.iter().map(|s| s.to_string()).collect(), |i, j| {
        products[i * n + j]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> ModulusContext {
        ModulusContext::new(p, e).unwrap()
    }

    #[test]
    fn klein_regime() {
        let report = regime_report(ctx(2, 3), 4096).unwrap();
        assert_eq!(report.aut_order, 4);
        assert_eq!(report.regime, "two cubed");
        assert!(report.verified(), "{:#?}", report.checks);
        assert_eq!(report.table_certificate, Some(true));
    }

    #[test]
    fn sixteen_regime_is_elementary_abelian() {
        let report = regime_report(ctx(2, 4), 4096).unwrap();
        assert_eq!(report.aut_order, 16);
        assert!(report.verified(), "{:#?}", report.checks);
        // (Z/2)^4: every non-identity element of the automorphism group has order 2
        let table = monoid_aut_group_table(ctx(2, 4), 4096).unwrap();
        let target = GroupTable::direct_product(
            &GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)),
            &GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)),
        );
        assert!(groups_isomorphic(&table, &target, 4096).unwrap().is_some());
    }

    #[test]
    fn odd_regimes() {
        let report = regime_report(ctx(3, 2), 4096).unwrap();
        assert_eq!(report.aut_order, 4);
        assert_eq!(report.regime, "odd prime power");
        assert!(report.verified(), "{:#?}", report.checks);
        let report = regime_report(ctx(5, 1), 4096).unwrap();
        assert_eq!(report.aut_order, 2);
        assert_eq!(report.regime, "odd prime");
        assert!(report.verified(), "{:#?}", report.checks);
        let report = regime_report(ctx(7, 2), 4096).unwrap();
        assert_eq!(report.aut_order, 72); // (p^{e-2}(p-1))² φ(p-1) = 36 · 2
        assert!(report.verified(), "{:#?}", report.checks);
    }

    #[test]
    fn two_power_regime() {
        for e in [4u32, 5, 6] {
            let report = regime_report(ctx(2, e), 4096).unwrap();
            assert_eq!(report.aut_order, 1 << (2 * (e - 2)));
            assert!(report.verified(), "e={e}: {:#?}", report.checks);
            assert_eq!(report.table_certificate, Some(true));
        }
    }

    #[test]
    fn trivial_regime() {
        for e in [1u32, 2] {
            let report = regime_report(ctx(2, e), 4096).unwrap();
            assert_eq!(report.aut_order, 1);
            assert!(report.verified());
        }
    }

    #[test]
    fn aut_table_matches_semidirect_table() {
        for (p, e) in [(3, 2), (2, 4), (2, 3), (5, 1)] {
            let c = ctx(p, e);
            let honest = monoid_aut_group_table(c, 4096).unwrap();
            let elements: Vec<SemidirectElement> =
                monoid_auts(c).iter().map(to_semidirect).collect();
            let closed = semidirect_group_table(&elements).unwrap();
            assert_eq!(honest.size(), closed.size());
            for i in 0..honest.size() {
                for j in 0..honest.size() {
                    assert_eq!(honest.mul(i, j), closed.mul(i, j), "{p}^{e} at ({i},{j})");
                }
            }
        }
    }
}
