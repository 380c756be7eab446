//! Symbolic FB-module families and their terms.
//!
//! An [`FbModuleSpec`] describes a family `{W_m}` of `S_m`-modules; each
//! node knows how to produce the decomposition of its degree-`m` term
//! ([`terms_at`]) and its character ([`character_at`]). Cycle modules take
//! their character straight from the cycle-count polynomial `E_ν`, so the two
//! functions are independent routes for those nodes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::characters::{decompose, ClassFunction, IrrDecomposition};
use crate::cyclepoly::{falling_factorial, CharPolynomial};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::pieri::projective_terms;

/// Default largest degree that [`terms_at`] will enumerate.
pub const DEFAULT_BUDGET: usize = 14;

/// Largest degree a family may be evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_m: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_m: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(max_m: usize) -> Self {
        Budget { max_m }
    }

    pub fn check(&self, m: usize) -> Result<()> {
        if m > self.max_m {
            Err(Error::BudgetExceeded {
                m,
                limit: self.max_m,
            })
        } else {
            Ok(())
        }
    }
}

/// Which simple module sits at degree `m` of the family `V_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum VConvention {
    /// `V_{λ̲[m]}` for `m ≥ |λ|`, zero below. Weight `w(λ)`, stable from `|λ|`.
    #[default]
    Socle,
    /// `V_{λ[m]}` for `m ≥ |λ| + λ_1`, zero below.
    ChurchFarb,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FbModuleSpec {
    /// `P(W_n)` for `W_n` given by its decomposition at degree `n`.
    Projective(IrrDecomposition),
    VFamily {
        lambda: Partition,
        convention: VConvention,
    },
    /// `IE_ν`, the tensor product of the cycle modules `IE_{ν_i}`.
    CycleModule(Partition),
    Tensor(Box<FbModuleSpec>, Box<FbModuleSpec>),
    DirectSum(Vec<FbModuleSpec>),
    /// Terms of degree below `from` replaced by zero.
    Truncate {
        child: Box<FbModuleSpec>,
        from: usize,
    },
    /// Factors of weight at most `p`.
    WeightAtMost {
        child: Box<FbModuleSpec>,
        p: usize,
    },
    /// Factors of weight greater than `p`.
    WeightAbove {
        child: Box<FbModuleSpec>,
        p: usize,
    },
}

impl FbModuleSpec {
    pub fn projective(nu: Partition) -> Self {
        FbModuleSpec::Projective(IrrDecomposition::single(nu))
    }

    pub fn vfam(lambda: Partition) -> Self {
        FbModuleSpec::VFamily {
            lambda,
            convention: VConvention::Socle,
        }
    }

    pub fn cycle(nu: Partition) -> Self {
        FbModuleSpec::CycleModule(nu)
    }

    pub fn tensor(a: FbModuleSpec, b: FbModuleSpec) -> Self {
        FbModuleSpec::Tensor(Box::new(a), Box::new(b))
    }

    pub fn truncate(child: FbModuleSpec, from: usize) -> Self {
        FbModuleSpec::Truncate {
            child: Box::new(child),
            from,
        }
    }
}

impl fmt::Display for FbModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FbModuleSpec::Projective(w) => {
                write!(f, "(proj {} \"", w.degree())?;
                for (i, (p, n)) in w.factors().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    if n != 1 {
                        write!(f, "{n}*")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("\")")
            }
            FbModuleSpec::VFamily { lambda, convention } => match convention {
                VConvention::Socle => write!(f, "(vfam {lambda})"),
                VConvention::ChurchFarb => write!(f, "(vfam-cf {lambda})"),
            },
            FbModuleSpec::CycleModule(nu) => {
                f.write_str("(cycle")?;
                for p in nu.parts() {
                    write!(f, " {p}")?;
                }
                f.write_str(")")
            }
            FbModuleSpec::Tensor(a, b) => write!(f, "(tensor {a} {b})"),
            FbModuleSpec::DirectSum(items) => {
                f.write_str("(sum")?;
                for item in items {
                    write!(f, " {item}")?;
                }
                f.write_str(")")
            }
            FbModuleSpec::Truncate { child, from } => write!(f, "(trunc>= {from} {child})"),
            FbModuleSpec::WeightAtMost { child, p } => write!(f, "(wle {p} {child})"),
            FbModuleSpec::WeightAbove { child, p } => write!(f, "(wgt {p} {child})"),
        }
    }
}

impl fmt::Debug for FbModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The decomposition of `W_m`.
pub fn terms_at(spec: &FbModuleSpec, m: usize, budget: &Budget) -> Result<IrrDecomposition> {
    budget.check(m)?;
    Ok(match spec {
        FbModuleSpec::Projective(w) => projective_terms(w, m),
        FbModuleSpec::VFamily { lambda, convention } => match convention {
            VConvention::Socle if m >= lambda.size() => {
                IrrDecomposition::single(lambda.socle().pad(m)?)
            }
            VConvention::ChurchFarb if m >= lambda.min_pad_degree() => {
                IrrDecomposition::single(lambda.pad(m)?)
            }
            _ => IrrDecomposition::zero(m),
        },
        FbModuleSpec::CycleModule(_) | FbModuleSpec::Tensor(..) => {
            decompose(&character_at(spec, m, budget)?)?
        }
        FbModuleSpec::DirectSum(items) => {
            let mut acc = IrrDecomposition::zero(m);
            for item in items {
                acc = acc.sum(&terms_at(item, m, budget)?)?;
            }
            acc
        }
        FbModuleSpec::Truncate { child, from } => {
            if m < *from {
                IrrDecomposition::zero(m)
            } else {
                terms_at(child, m, budget)?
            }
        }
        FbModuleSpec::WeightAtMost { child, p } => {
            weight_truncate(&terms_at(child, m, budget)?, *p).1
        }
        FbModuleSpec::WeightAbove { child, p } => {
            weight_truncate(&terms_at(child, m, budget)?, *p).0
        }
    })
}

/// The character of `W_m`.
pub fn character_at(spec: &FbModuleSpec, m: usize, budget: &Budget) -> Result<ClassFunction> {
    budget.check(m)?;
    match spec {
        FbModuleSpec::CycleModule(nu) => cycle_module_char(nu, m),
        FbModuleSpec::Tensor(a, b) => character_at(a, m, budget)?.mul(&character_at(b, m, budget)?),
        FbModuleSpec::DirectSum(items) => {
            items.iter().try_fold(ClassFunction::zero(m), |acc, item| {
                acc.add(&character_at(item, m, budget)?)
            })
        }
        _ => Ok(terms_at(spec, m, budget)?.character()),
    }
}

/// `dim W_m`
pub fn dimension_at(spec: &FbModuleSpec, m: usize, budget: &Budget) -> Result<BigInt> {
    Ok(character_at(spec, m, budget)?.at_identity().to_integer())
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// `E_ℓ = Σ_{de=ℓ} φ(d) (d^e / ℓ) X_d (X_d - 1) ⋯ (X_d - e + 1)`, the
/// character polynomial of the permutation module on the `ℓ`-cycles of `[1, m]`.
pub fn cycle_poly(ell: usize) -> Result<CharPolynomial> {
    if ell == 0 {
        return Err(Error::Precondition("cycle length must be positive".into()));
    }
    let mut out = CharPolynomial::zero();
    for d in (1..=ell).filter(|d| ell.is_multiple_of(*d)) {
        let e = ell / d;
        let coeff = BigRational::new(
            BigInt::from(totient(d)) * BigInt::from(d).pow(e as u32),
            BigInt::from(ell),
        );
        out.add_scaled(&falling_factorial(d, e), &coeff);
    }
    Ok(out)
}

/// `E_ν = ∏ E_{ν_i}`
pub fn cycle_module_poly(nu: &Partition) -> Result<CharPolynomial> {
    if nu.is_empty() {
        return Err(Error::InvalidPartition(
            "cycle module of the empty partition".into(),
        ));
    }
    nu.parts().iter().try_fold(
        CharPolynomial::one(),
        |acc, &l| Ok(acc.mul(&cycle_poly(l)?)),
    )
}

/// The character of `IE_ν^m`, i.e. `ρ_m(E_ν)`.
pub fn cycle_module_char(nu: &Partition, m: usize) -> Result<ClassFunction> {
    Ok(cycle_module_poly(nu)?.eval_rho_all(m))
}

/// Polynomials `Q_1, …, Q_N` in formal variables `E_1, E_2, …` (stored as
/// `X_1, X_2, …`) with `X_ℓ = Q_ℓ(E_1, …, E_ℓ)` once `E_i` is replaced by
/// [`cycle_poly`]`(i)`.
pub fn express_x_in_e(n: usize) -> Result<Vec<CharPolynomial>> {
    if n == 0 {
        return Err(Error::Precondition("need at least one variable".into()));
    }
    let mut qs: Vec<CharPolynomial> = Vec::with_capacity(n);
    for ell in 1..=n {
        // E_ℓ = φ(ℓ) X_ℓ + R_ℓ(X_d : d | ℓ, d < ℓ)
        let phi = BigRational::from_integer(BigInt::from(totient(ell)));
        let lead = CharPolynomial::var(ell).scale(&phi);
        let rest = cycle_poly(ell)?.sub(&lead);
        let rest_in_e = rest.compose(&qs)?;
        let q = CharPolynomial::var(ell).sub(&rest_in_e).scale(&phi.recip());
        qs.push(q);
    }
    Ok(qs)
}

/// The largest weight among the factors; 0 for the zero module.
pub fn module_weight(d: &IrrDecomposition) -> usize {
    d.factors().map(|(p, _)| p.weight()).max().unwrap_or(0)
}

/// Splits `d` into the factors of weight `> p` and those of weight `≤ p`.
pub fn weight_truncate(d: &IrrDecomposition, p: usize) -> (IrrDecomposition, IrrDecomposition) {
    (d.filter(|l| l.weight() > p), d.filter(|l| l.weight() <= p))
}
