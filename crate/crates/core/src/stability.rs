//! Rank scans for representation stability and character polynomiality, and
//! the weight checks that tie them together.
//!
//! Every rank here is certified only on `[0, m_max]`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;

use crate::characters::{decompose, inner_product, trivial, IrrDecomposition};
use crate::cyclepoly::{CharPolynomial, Monomial, WeightedDegree};
use crate::error::{Error, Result};
use crate::fbmodules::{character_at, module_weight, terms_at, Budget, FbModuleSpec, VConvention};
use crate::frobenius::frobenius_poly_of_module;
use crate::linalg::rank;
use crate::partitions::{cycle_types, partitions_of, partitions_up_to, Partition};

pub type SocleMultiplicities = BTreeMap<Partition, u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RsEstimate {
    Stable {
        n: usize,
        multiplicities: SocleMultiplicities,
    },
    NotStabilized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcEstimate {
    Polynomial { n: usize, poly: CharPolynomial },
    NotPolynomial { candidate: CharPolynomial },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    Equal,
    /// The polynomials differ on `S_m`.
    Distinguished {
        m: usize,
    },
    /// They agree on the scanned range but the weights are too large to conclude.
    Inconclusive,
}

/// Socle-indexed multiplicities `σ ↦ n_σ` of `d`.
pub fn socle_multiplicities(d: &IrrDecomposition) -> SocleMultiplicities {
    let mut out = SocleMultiplicities::new();
    for (lambda, n) in d.factors() {
        *out.entry(lambda.socle()).or_insert(0) += n;
    }
    out
}

fn scan_terms(spec: &FbModuleSpec, m_max: usize, budget: &Budget) -> Result<Vec<IrrDecomposition>> {
    budget.check(m_max)?;
    (0..=m_max)
        .into_par_iter()
        .map(|m| terms_at(spec, m, budget))
        .collect()
}

/// Smallest `N` such that the socle multiplicities are constant on
/// `[N, m_max]` and every occurring socle `σ` satisfies `|σ| + σ_1 ≤ N`.
/// Constancy must be witnessed on at least two consecutive degrees.
pub fn rank_rs_estimate(spec: &FbModuleSpec, m_max: usize, budget: &Budget) -> Result<RsEstimate> {
    let terms = scan_terms(spec, m_max, budget)?;
    Ok(rank_rs_from_terms(&terms))
}

fn rank_rs_from_terms(terms: &[IrrDecomposition]) -> RsEstimate {
    let maps: Vec<_> = terms.iter().map(socle_multiplicities).collect();
    let top = maps.last().expect("scan includes m = 0").clone();
    let m_max = maps.len() - 1;
    let mut start = m_max;
    while start > 0 && maps[start - 1] == top {
        start -= 1;
    }
    let admissible = top.keys().map(Partition::min_pad_degree).max().unwrap_or(0);
    let n = start.max(admissible);
    if m_max > 0 && n >= m_max {
        return RsEstimate::NotStabilized;
    }
    RsEstimate::Stable {
        n,
        multiplicities: top,
    }
}

/// Takes the Frobenius polynomial of the degree-`m_max` term as candidate and
/// finds the smallest `N` with `ρ_m(P) = χ_{W_m}` on `[N, m_max]`.
pub fn rank_pc_estimate(spec: &FbModuleSpec, m_max: usize, budget: &Budget) -> Result<PcEstimate> {
    budget.check(m_max)?;
    let poly = frobenius_poly_of_module(&terms_at(spec, m_max, budget)?);
    let agrees: Vec<bool> = (0..=m_max)
        .into_par_iter()
        .map(|m| Ok(poly.eval_rho_all(m) == character_at(spec, m, budget)?))
        .collect::<Result<_>>()?;
    let mut n = m_max + 1;
    while n > 0 && agrees[n - 1] {
        n -= 1;
    }
    if n > m_max || (m_max > 0 && n == m_max) {
        return Ok(PcEstimate::NotPolynomial { candidate: poly });
    }
    Ok(PcEstimate::Polynomial { n, poly })
}

/// Compares `P` and `Q` on `S_m` for `N ≤ m ≤ m_max`. Agreement only proves
/// equality when both weights are at most `m_max / 2`.
pub fn uniqueness_check(
    p: &CharPolynomial,
    q: &CharPolynomial,
    n: usize,
    m_max: usize,
) -> Uniqueness {
    if p == q {
        return Uniqueness::Equal;
    }
    let diff = p.sub(q);
    if let Some(m) = (n..=m_max).find(|&m| !diff.eval_rho_all(m).is_zero()) {
        return Uniqueness::Distinguished { m };
    }
    Uniqueness::Inconclusive
}

/// Monomials `X_1^{n_1} ⋯ X_d^{n_d}` of weight at most `d`.
pub fn monomials_up_to_weight(d: usize) -> Vec<Monomial> {
    partitions_up_to(d)
        .iter()
        .map(|p| {
            Monomial::from_exponents((1..=p.first()).map(|i| p.multiplicity(i) as u32).collect())
        })
        .collect()
}

/// Rank and nullity of `ρ_m` restricted to polynomials of weight `≤ d`.
pub fn rho_image_kernel(m: usize, d: usize) -> (usize, usize) {
    let monomials = monomials_up_to_weight(d);
    let classes = cycle_types(m);
    let rows: Vec<Vec<BigRational>> = monomials
        .iter()
        .map(|mono| {
            let p = CharPolynomial::monomial(mono.clone(), BigRational::from_integer(1.into()));
            classes.iter().map(|t| p.eval_rho(t)).collect()
        })
        .collect();
    let r = rank(&rows);
    (r, monomials.len() - r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalWeight {
    pub poly_weight: WeightedDegree,
    pub module_weight: usize,
    pub frobenius_weight: WeightedDegree,
}

impl MinimalWeight {
    /// `deg_w(P) ≥ w(W_m)`, with equality for the Frobenius polynomial.
    pub fn passed(&self) -> bool {
        if self.frobenius_weight == WeightedDegree::NegInfinity {
            return true;
        }
        self.poly_weight >= WeightedDegree::Finite(self.module_weight)
            && self.frobenius_weight == WeightedDegree::Finite(self.module_weight)
    }
}

/// Requires `ρ_m(P)` to be the character of `d`.
pub fn minimal_weight_check(d: &IrrDecomposition, p: &CharPolynomial) -> Result<MinimalWeight> {
    if p.eval_rho_all(d.degree()) != d.character() {
        return Err(Error::Precondition(format!(
            "the polynomial does not represent the character of {d}"
        )));
    }
    Ok(MinimalWeight {
        poly_weight: p.weighted_degree(),
        module_weight: module_weight(d),
        frobenius_weight: frobenius_poly_of_module(d).weighted_degree(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarStability {
    pub values: Vec<(usize, BigRational)>,
    pub passed: bool,
}

/// `⟨1 | ρ_m(P)⟩` over `ms`, required constant from `m = deg_w(P)` on.
pub fn scalar_stability_check(p: &CharPolynomial, ms: RangeInclusive<usize>) -> ScalarStability {
    let values: Vec<(usize, BigRational)> = ms
        .map(|m| {
            let v = inner_product(&trivial(m), &p.eval_rho_all(m)).expect("same degree");
            (m, v)
        })
        .collect();
    let from = p.weighted_degree().finite().unwrap_or(0);
    let mut tail = values.iter().filter(|(m, _)| *m >= from).map(|(_, v)| v);
    let passed = match tail.next() {
        None => true,
        Some(first) => tail.all(|v| v == first),
    };
    ScalarStability { values, passed }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub spec: FbModuleSpec,
    pub m_max: usize,
    pub rank_rs: Option<usize>,
    pub rank_pc: Option<usize>,
    pub poly: Option<CharPolynomial>,
    pub stable_multiplicities: SocleMultiplicities,
    pub bound_checks: Vec<BoundCheck>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.bound_checks.iter().all(|c| c.passed)
    }

    /// `deg_w(P_W)` as an integer; 0 for `P_W = 0`.
    pub fn poly_weight(&self) -> Option<usize> {
        self.poly
            .as_ref()
            .map(|p| p.weighted_degree().finite().unwrap_or(0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "spec": self.spec.to_string(),
            "m_max": self.m_max,
            "certified_to": self.m_max,
            "rank_rs": self.rank_rs,
            "rank_pc": self.rank_pc,
            "poly": self.poly.as_ref().map(|p| p.to_string()),
            "poly_weight": self.poly_weight(),
            "stable_multiplicities": self
                .stable_multiplicities
                .iter()
                .rev()
                .map(|(p, n)| json!({"socle": p.to_string(), "mult": n}))
                .collect::<Vec<_>>(),
            "bound_checks": self
                .bound_checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |n| n.to_string())
}

impl std::fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "spec: {}", self.spec)?;
        writeln!(f, "certified on m = 0..{}", self.m_max)?;
        writeln!(f, "rank_rs: {}", opt(self.rank_rs))?;
        writeln!(f, "rank_pc: {}", opt(self.rank_pc))?;
        match &self.poly {
            Some(p) => writeln!(f, "poly: {p} (weight {})", p.weighted_degree())?,
            None => writeln!(f, "poly: none")?,
        }
        if !self.stable_multiplicities.is_empty() {
            f.write_str("stable multiplicities:")?;
            for (p, n) in self.stable_multiplicities.iter().rev() {
                write!(f, " [{p}]:{n}")?;
            }
            writeln!(f)?;
        }
        for c in &self.bound_checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// The stable family `⊕ (V_{σ'})^{n_σ}` rebuilt from socle multiplicities,
/// where `σ'` repeats the first row of `σ`.
pub fn stable_model(multiplicities: &SocleMultiplicities) -> FbModuleSpec {
    let mut items = Vec::new();
    for (sigma, &n) in multiplicities.iter().rev() {
        for _ in 0..n {
            items.push(FbModuleSpec::VFamily {
                lambda: sigma.double_first_part(),
                convention: VConvention::Socle,
            });
        }
    }
    FbModuleSpec::DirectSum(items)
}

/// Runs both rank scans and checks the inequalities between them, the
/// identification of `P_W` with the Frobenius polynomials, the weight of the
/// tail, and the stable-model reconstruction.
pub fn verify_equivalence(
    spec: &FbModuleSpec,
    m_max: usize,
    budget: &Budget,
) -> Result<StabilityReport> {
    let terms = scan_terms(spec, m_max, budget)?;
    let rs = rank_rs_from_terms(&terms);
    let pc = rank_pc_estimate(spec, m_max, budget)?;

    let (rank_rs, stable_multiplicities) = match rs {
        RsEstimate::Stable { n, multiplicities } => (Some(n), multiplicities),
        RsEstimate::NotStabilized => (None, SocleMultiplicities::new()),
    };
    let (rank_pc, poly) = match pc {
        PcEstimate::Polynomial { n, poly } => (Some(n), Some(poly)),
        PcEstimate::NotPolynomial { .. } => (None, None),
    };
    let mut checks = Vec::new();

    checks.push(match (rank_pc, rank_rs) {
        (Some(pc), Some(rs)) => BoundCheck {
            name: "rank_pc <= rank_rs",
            passed: pc <= rs,
            detail: format!("{pc} <= {rs}"),
        },
        (None, Some(rs)) => BoundCheck {
            name: "rank_pc <= rank_rs",
            passed: false,
            detail: format!("stable from {rs} but no polynomial found"),
        },
        (_, None) => BoundCheck {
            name: "rank_pc <= rank_rs",
            passed: true,
            detail: "not stabilized within the scan".into(),
        },
    });

    if let (Some(n), Some(p)) = (rank_pc, &poly) {
        let d = p.weighted_degree().finite().unwrap_or(0);
        let bound = n.max(2 * d);
        checks.push(match rank_rs {
            Some(rs) => BoundCheck {
                name: "rank_rs <= max(rank_pc, 2 deg_w P)",
                passed: rs <= bound,
                detail: format!("{rs} <= max({n}, {})", 2 * d),
            },
            None => BoundCheck {
                name: "rank_rs <= max(rank_pc, 2 deg_w P)",
                passed: bound >= m_max,
                detail: format!("not stabilized within the scan; bound {bound}"),
            },
        });

        let from = bound;
        if from <= m_max {
            let range = &terms[from..];
            let mismatch = range.iter().find(|t| &frobenius_poly_of_module(t) != p);
            checks.push(BoundCheck {
                name: "P_W = X_{W_m} for m >= max(2 deg_w, N)",
                passed: mismatch.is_none(),
                detail: match mismatch {
                    None => format!("m = {from}..{m_max}"),
                    Some(t) => format!("differs at m = {}", t.degree()),
                },
            });
            let bad = range.iter().find(|t| module_weight(t) != d);
            checks.push(BoundCheck {
                name: "w(W_m) = deg_w P for m >= max(2 deg_w, N)",
                passed: bad.is_none(),
                detail: match bad {
                    None => format!("weight {d} on m = {from}..{m_max}"),
                    Some(t) => format!("weight {} at m = {}", module_weight(t), t.degree()),
                },
            });

            let model = stable_model(&socle_multiplicities(&terms[from]));
            let mut failed_at = None;
            for t in range {
                if terms_at(&model, t.degree(), budget)? != *t {
                    failed_at = Some(t.degree());
                    break;
                }
            }
            checks.push(BoundCheck {
                name: "stable model reproduces the tail",
                passed: failed_at.is_none(),
                detail: match failed_at {
                    None => format!("{model} on m = {from}..{m_max}"),
                    Some(m) => format!("{model} differs at m = {m}"),
                },
            });
        }
    }

    Ok(StabilityReport {
        spec: spec.clone(),
        m_max,
        rank_rs,
        rank_pc,
        poly,
        stable_multiplicities,
        bound_checks: checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWeight {
    pub left: usize,
    pub right: usize,
    pub product: usize,
    /// `m ≥ 2(|λ| + |μ|)`, where equality is expected.
    pub additive_range: bool,
    pub terms: IrrDecomposition,
}

impl TensorWeight {
    pub fn passed(&self) -> bool {
        let sum = self.left + self.right;
        self.product <= sum && (!self.additive_range || self.product == sum)
    }
}

/// Weight of `V_{λ[m]} ⊗ V_{μ[m]}` against `|λ| + |μ|`.
pub fn tensor_weight_check(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
    budget: &Budget,
) -> Result<TensorWeight> {
    budget.check(m)?;
    let a = lambda.pad(m)?;
    let b = mu.pad(m)?;
    let left = IrrDecomposition::single(a);
    let right = IrrDecomposition::single(b);
    let terms = decompose(&left.character().mul(&right.character())?)?;
    Ok(TensorWeight {
        left: module_weight(&left),
        right: module_weight(&right),
        product: module_weight(&terms),
        additive_range: m >= 2 * (lambda.size() + mu.size()),
        terms,
    })
}

/// `#{λ ⊢ m : w(λ) ≤ d}`
pub fn count_low_weight(m: usize, d: usize) -> usize {
    partitions_of(m).iter().filter(|l| l.weight() <= d).count()
}

/// `|Γ_ℓ^m| = m(m-1)⋯(m-ℓ+1)/ℓ`
pub fn cycle_count(m: usize, ell: usize) -> BigInt {
    if ell > m {
        return BigInt::from(0);
    }
    (m - ell + 1..=m).map(BigInt::from).product::<BigInt>() / BigInt::from(ell)
}
