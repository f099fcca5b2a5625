//! The ring transported along a monoid automorphism: ψ defines a new
//! addition a ⊕ b = ψ⁻¹(ψ(a) + ψ(b)) making (ℤ/pᵉℤ, ⊕, ·) a ring with ψ as
//! a ring isomorphism onto the standard one, plus the induced action
//! a ∗ b = ψ(a)·b of that ring on the standard additive group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid_aut::MonoidAutParam;
use crate::report::{all_passed, Check};
use crate::residue::Residue;
/// Addition and multiplication tables of one ring structure on ℤ/pᵉℤ.
#[derive(Debug, Clone)]
pub struct RingTable {
    modulus: u64,
    addition: Vec<u16>,
    multiplication: Vec<u16>,
    zero: usize,
    one: usize,
}

impl RingTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.addition[a * self.modulus as usize + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.multiplication[a * self.modulus as usize + b] as usize
    }

    /// Addition table as CSV; first row and column are element labels.
    pub fn addition_csv(&self) -> String {
        let n = self.modulus as usize;
        let mut out = String::new();
        let header: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        out.push_str(&format!(",{}\n", header.join(",")));
        for a in 0..n {
            out.push_str(&a.to_string());
            for b in 0..n {
                out.push_str(&format!(",{}", self.add(a, b)));
            }
            out.push('\n');
        }
        out
    }

    /// Direct check of every ring axiom, O(n³) in the triple scans.
    pub fn validate_direct(&self) -> Result<()> {
        let n = self.modulus as usize;
        for a in 0..n {
            if self.add(self.zero, a) != a || self.add(a, self.zero) != a {
                return Err(Error::RingAxiom(format!("0 is not an additive identity at {a}")));
            }
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(Error::RingAxiom(format!("1 is not a multiplicative identity at {a}")));
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return Err(Error::RingAxiom(format!("{a} has no additive inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::RingAxiom(format!("addition not commutative at ({a},{b})")));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::RingAxiom(format!(
                        "multiplication not commutative at ({a},{b})"
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab_add = self.add(a, b);
                let ab_mul = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab_add, c) != self.add(a, self.add(b, c)) {
                        return Err(Error::RingAxiom(format!(
                            "addition not associative at ({a},{b},{c})"
                        )));
                    }
                    if self.mul(ab_mul, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::RingAxiom(format!(
                            "multiplication not associative at ({a},{b},{c})"
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::RingAxiom(format!(
                            "distributivity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Verification of one transported ring.
#[derive(Debug, Clone, Serialize)]
pub struct InducedRingReport {
    pub modulus: u64,
    pub automorphism: String,
    pub checks: Vec<Check>,
}

impl InducedRingReport {
    pub fn verified(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Builds the ring (ℤ/pᵉℤ, ⊕, ·) for ψ, with ⊕ the transported addition.
pub fn induced_ring(psi: &MonoidAutParam, table_bound: u64) -> Result<RingTable> {
    let ctx = psi.ctx();
    let m = ctx.modulus();
    if m > table_bound {
        return Err(Error::BoundExceeded {
            modulus: m,
            bound: table_bound,
        });
    }
    let n = m as usize;
    let map = psi.full_map();
    let mut inverse_map = vec![0u64; n];
    for (x, &fx) in map.iter().enumerate() {
        inverse_map[fx as usize] = x as u64;
    }
    let mut addition = vec![0u16; n * n];
    let mut multiplication = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            addition[a * n + b] = inverse_map[((map[a] + map[b]) % m) as usize] as u16;
            multiplication[a * n + b] = ((a as u64 * b as u64) % m) as u16;
        }
    }
    Ok(RingTable {
        modulus: m,
        addition,
        multiplication,
        zero: 0,
        one: 1 % n.max(1),
    })
}

/// Certifies the transported ring:
///
/// - ψ is a bijection and satisfies ψ(a ⊕ b) = ψ(a) + ψ(b) and
///   ψ(a·b) = ψ(a)·ψ(b) on every pair (so every O(n³) axiom of ⊕ transports
///   from the standard ring, whose axioms are checked directly);
/// - the O(n²) axioms of the table are additionally checked directly;
/// - when `direct_axioms` is set, the full O(n³) direct scan runs as well.
pub fn verify_induced_ring(
    psi: &MonoidAutParam,
    table_bound: u64,
    direct_axioms: bool,
) -> Result<(RingTable, InducedRingReport)> {
    let ctx = psi.ctx();
    let m = ctx.modulus();
    let ring = induced_ring(psi, table_bound)?;
    let mut checks = Vec::new();
    let n = m as usize;
    let map = psi.full_map();

    let mut hit = vec![false; n];
    let mut bijective = true;
    for &v in &map {
        if hit[v as usize] {
            bijective = false;
            break;
        }
        hit[v as usize] = true;
    }
    checks.push(Check::new("automorphism_bijective", bijective));

    let additive_transport = (0..n).all(|a| {
        (0..n).all(|b| map[ring.add(a, b)] == (map[a] + map[b]) % m)
    });
    checks.push(Check::new("addition_transports_to_standard", additive_transport));
    let multiplicative =
        (0..n).all(|a| (0..n).all(|b| map[ring.mul(a, b)] == (map[a] * map[b]) % m));
    checks.push(Check::new("multiplication_preserved", multiplicative));

    let zero_one = ring.zero() == 0 && map[0] == 0 && map[ring.one()] == 1 % m;
    checks.push(Check::new("zero_and_one_fixed", zero_one));

    let commutative = (0..n).all(|a| (a..n).all(|b| ring.add(a, b) == ring.add(b, a)));
    checks.push(Check::new("addition_commutative", commutative));
    let inverses = (0..n).all(|a| (0..n).any(|b| ring.add(a, b) == 0));
    checks.push(Check::new("additive_inverses_exist", inverses));
    let identity = (0..n).all(|a| ring.add(a, 0) == a);
    checks.push(Check::new("zero_is_identity", identity));

    if direct_axioms {
        checks.push(Check::new("direct_axiom_scan", ring.validate_direct().is_ok()));
    }

    let report = InducedRingReport {
        modulus: m,
        automorphism: psi.to_string(),
        checks,
    };
    Ok((ring, report))
}

/// The action a ∗ b = ψ(a)·b of the transported ring on (ℤ/pᵉℤ, +).
pub fn induced_action(psi: &MonoidAutParam, a: &Residue, b: &Residue) -> Result<Residue> {
    let image = psi.apply(a)?;
    image.mul(b)
}

/// Checks the two module-compatibility laws of the induced action on every
/// triple: (a ⊕ a′) ∗ b = a ∗ b + a′ ∗ b and (a·a′) ∗ b = a ∗ (a′ ∗ b).
pub fn check_induced_action_axioms(psi: &MonoidAutParam, table_bound: u64) -> Result<bool> {
    let ctx = psi.ctx();
    let m = ctx.modulus();
    if m > table_bound {
        return Err(Error::BoundExceeded {
            modulus: m,
            bound: table_bound,
        });
    }
    let ring = induced_ring(psi, table_bound)?;
    let map = psi.full_map();
    let n = m as usize;
    for a in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                let lhs = (map[ring.add(a, a2)] * b as u64) % m;
                let rhs = (map[a] * b as u64 + map[a2] * b as u64) % m;
                if lhs != rhs {
                    return Ok(false);
                }
                let lhs = (map[(a * a2) % n] * b as u64) % m;
                let rhs = (map[a] * (map[a2] * b as u64 % m)) % m;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
