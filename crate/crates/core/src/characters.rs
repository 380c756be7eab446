//! Irreducible characters of `S_m`, class functions and decompositions.
//!
//! Character values come from the Murnaghan–Nakayama rule, run on beta-sets
//! (abacus positions) so that removing a rim hook of length `r` is a single
//! bead move. Full tables are cached per degree; the cache only ever holds
//! values identical to a fresh computation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{class_size, cycle_types, factorial, partitions_of, CycleType, Partition};

/// Degrees above this are refused by [`induce_bruteforce`].
pub const BRUTE_FORCE_MAX_DEGREE: usize = 12;

/// `χ_λ(g)` for `g` of type `t`.
pub fn irr_char(lambda: &Partition, t: &CycleType) -> Result<i64> {
    if lambda.size() != t.degree() {
        return Err(Error::DegreeMismatch {
            expected: t.degree(),
            found: lambda.size(),
        });
    }
    let cycles = t.to_partition();
    let mut memo = HashMap::new();
    Ok(murnaghan_nakayama(
        lambda.parts(),
        cycles.parts(),
        &mut memo,
    ))
}

type MnMemo = HashMap<(Vec<usize>, usize), i64>;

/// Removes rim hooks of length `cycles[0]`, `cycles[1]`, … from `shape`.
/// The memo key is the remaining shape together with the number of cycles
/// still to be removed.
fn murnaghan_nakayama(shape: &[usize], cycles: &[usize], memo: &mut MnMemo) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return if shape.is_empty() { 1 } else { 0 };
    };
    let key = (shape.to_vec(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = shape.len();
    // beta_i = λ_i + (ℓ - 1 - i), strictly decreasing
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let value = murnaghan_nakayama(&smaller, rest, memo);
        if between % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    memo.insert(key, total);
    total
}

/// The character table of `S_m`: rows are partitions and columns are cycle
/// types, both in the order of [`partitions_of`].
#[derive(Debug)]
pub struct CharacterTable {
    m: usize,
    partitions: Vec<Partition>,
    classes: Vec<CycleType>,
    class_sizes: Vec<BigUint>,
    order: BigUint,
    values: Vec<Vec<i64>>,
    partition_index: HashMap<Partition, usize>,
    class_index: HashMap<CycleType, usize>,
}

impl CharacterTable {
    fn compute(m: usize) -> Self {
        let partitions = partitions_of(m);
        let classes = cycle_types(m);
        let mut values = vec![vec![0i64; classes.len()]; partitions.len()];
        for (j, class) in classes.iter().enumerate() {
            let cycles = class.to_partition();
            let mut memo = HashMap::new();
            for (i, lambda) in partitions.iter().enumerate() {
                values[i][j] = murnaghan_nakayama(lambda.parts(), cycles.parts(), &mut memo);
            }
        }
        let class_sizes = classes.iter().map(class_size).collect();
        let partition_index = partitions
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let class_index = classes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        CharacterTable {
            m,
            partitions,
            classes,
            class_sizes,
            order: factorial(m),
            values,
            partition_index,
            class_index,
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    /// `m!`
    pub fn group_order(&self) -> &BigUint {
        &self.order
    }

    pub fn class_index(&self, t: &CycleType) -> Option<usize> {
        self.class_index.get(t).copied()
    }

    pub fn partition_index(&self, lambda: &Partition) -> Option<usize> {
        self.partition_index.get(lambda).copied()
    }

    /// Row of character values for `λ`.
    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        self.partition_index(lambda)
            .map(|i| self.values[i].as_slice())
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn value(&self, lambda: &Partition, t: &CycleType) -> Option<i64> {
        Some(self.values[self.partition_index(lambda)?][self.class_index(t)?])
    }

    /// `χ_λ` as a class function.
    pub fn character(&self, lambda: &Partition) -> Option<ClassFunction> {
        self.row(lambda).map(|row| ClassFunction {
            m: self.m,
            values: row
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        })
    }
}

/// Shared, lazily computed character table of `S_m`.
pub fn character_table(m: usize) -> Arc<CharacterTable> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(table) = tables
        .lock()
        .expect("character table cache poisoned")
        .get(&m)
    {
        return Arc::clone(table);
    }
    // Computed outside the lock; concurrent fills produce identical tables.
    let table = Arc::new(CharacterTable::compute(m));
    let mut guard = tables.lock().expect("character table cache poisoned");
    Arc::clone(guard.entry(m).or_insert(table))
}

/// A rational class function of `S_m`, stored densely over the cycle types of
/// `m` in the order of [`cycle_types`].
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    m: usize,
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(m: usize, values: Vec<BigRational>) -> Result<Self> {
        let expected = character_table(m).classes().len();
        if values.len() != expected {
            return Err(Error::Precondition(format!(
                "S_{m} has {expected} classes, got {} values",
                values.len()
            )));
        }
        Ok(ClassFunction { m, values })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(&CycleType) -> BigRational) -> Self {
        let table = character_table(m);
        ClassFunction {
            m,
            values: table.classes().iter().map(&mut f).collect(),
        }
    }

    pub fn zero(m: usize) -> Self {
        Self::constant(m, BigRational::zero())
    }

    pub fn constant(m: usize, c: BigRational) -> Self {
        let n = character_table(m).classes().len();
        ClassFunction {
            m,
            values: vec![c; n],
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, t: &CycleType) -> Result<&BigRational> {
        if t.degree() != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: t.degree(),
            });
        }
        let idx = character_table(self.m)
            .class_index(t)
            .expect("every cycle type of m is a class");
        Ok(&self.values[idx])
    }

    /// `(type, value)` pairs in class order.
    pub fn iter(&self) -> impl Iterator<Item = (CycleType, &BigRational)> + '_ {
        cycle_types(self.m).into_iter().zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn check_degree(&self, other: &ClassFunction) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            m: self.m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            m: self.m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Pointwise product (the character of a tensor product).
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            m: self.m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> ClassFunction {
        ClassFunction {
            m: self.m,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The value at the identity, i.e. the dimension for a character.
    pub fn at_identity(&self) -> &BigRational {
        self.values.last().expect("S_m has at least one class")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = ClassFunctionDoc {
            m: self.m,
            values: self
                .iter()
                .map(|(t, v)| ClassValueDoc {
                    cycle_type: t.to_string(),
                    value: v.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("class function serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: ClassFunctionDoc = serde_json::from_value(value.clone())
            .map_err(|e| Error::parse(0, format!("class function JSON: {e}")))?;
        let table = character_table(doc.m);
        let mut values: Vec<Option<BigRational>> = vec![None; table.classes().len()];
        for entry in &doc.values {
            let t: CycleType = entry.cycle_type.parse()?;
            let idx = table.class_index(&t).ok_or(Error::DegreeMismatch {
                expected: doc.m,
                found: t.degree(),
            })?;
            values[idx] = Some(parse_rational(&entry.value)?);
        }
        let values = values
            .into_iter()
            .zip(table.classes())
            .map(|(v, t)| {
                v.ok_or_else(|| Error::Precondition(format!("missing value for type {t}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { m: doc.m, values })
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(t, v)| (t.to_string(), v.to_string())))
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ClassFunctionDoc {
    m: usize,
    values: Vec<ClassValueDoc>,
}

#[derive(Serialize, Deserialize)]
struct ClassValueDoc {
    #[serde(rename = "type")]
    cycle_type: String,
    value: String,
}

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::parse(0, format!("bad rational `{text}`")))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::parse(0, format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// `⟨f | g⟩ = (1/m!) Σ_g f(g) g(g⁻¹)`, summed over cycle types.
///
/// Every permutation is conjugate to its inverse, so `g(g⁻¹)` is read off at
/// the same cycle type.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    f.check_degree(g)?;
    let table = character_table(f.m);
    let sum = table
        .class_sizes()
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .fold(BigRational::zero(), |acc, (size, (a, b))| {
            acc + BigRational::from_integer(BigInt::from(size.clone())) * a * b
        });
    Ok(sum / BigRational::from_integer(BigInt::from(table.group_order().clone())))
}

/// Multiplicities of the simple `S_m`-modules `V_λ` in a representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IrrDecomposition {
    m: usize,
    mult: BTreeMap<Partition, u64>,
}

impl IrrDecomposition {
    pub fn zero(m: usize) -> Self {
        IrrDecomposition {
            m,
            mult: BTreeMap::new(),
        }
    }

    pub fn single(lambda: Partition) -> Self {
        let mut d = Self::zero(lambda.size());
        d.mult.insert(lambda, 1);
        d
    }

    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (Partition, u64)>) -> Result<Self> {
        let mut d = Self::zero(m);
        for (lambda, n) in pairs {
            d.add_factor(lambda, n)?;
        }
        Ok(d)
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn add_factor(&mut self, lambda: Partition, n: u64) -> Result<()> {
        if lambda.size() != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: lambda.size(),
            });
        }
        if n > 0 {
            *self.mult.entry(lambda).or_insert(0) += n;
        }
        Ok(())
    }

    pub fn multiplicity(&self, lambda: &Partition) -> u64 {
        self.mult.get(lambda).copied().unwrap_or(0)
    }

    /// Nonzero `(λ, n_λ)` in reverse-lexicographic order of `λ`.
    pub fn factors(&self) -> impl Iterator<Item = (&Partition, u64)> + '_ {
        self.mult.iter().rev().map(|(p, &n)| (p, n))
    }

    /// Number of distinct simple factors.
    pub fn distinct(&self) -> usize {
        self.mult.len()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn sum(&self, other: &IrrDecomposition) -> Result<IrrDecomposition> {
        if self.m != other.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        let mut out = self.clone();
        for (p, n) in other.factors() {
            *out.mult.entry(p.clone()).or_insert(0) += n;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: u64) -> IrrDecomposition {
        if k == 0 {
            return Self::zero(self.m);
        }
        IrrDecomposition {
            m: self.m,
            mult: self.mult.iter().map(|(p, &n)| (p.clone(), n * k)).collect(),
        }
    }

    /// Keeps the factors satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Partition) -> bool) -> IrrDecomposition {
        IrrDecomposition {
            m: self.m,
            mult: self
                .mult
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, &n)| (p.clone(), n))
                .collect(),
        }
    }

    /// `Σ n_λ χ_λ`
    pub fn character(&self) -> ClassFunction {
        let table = character_table(self.m);
        let mut acc = vec![BigInt::zero(); table.classes().len()];
        for (lambda, n) in self.factors() {
            let row = table.row(lambda).expect("keys are partitions of m");
            for (a, &v) in acc.iter_mut().zip(row) {
                *a += BigInt::from(v) * BigInt::from(n);
            }
        }
        ClassFunction {
            m: self.m,
            values: acc.into_iter().map(BigRational::from_integer).collect(),
        }
    }

    pub fn dimension(&self) -> BigInt {
        self.character().at_identity().to_integer()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "factors": self
                .factors()
                .map(|(p, n)| serde_json::json!({"partition": p.to_string(), "mult": n}))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for IrrDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}{{", self.m)?;
        for (i, (p, n)) in self.factors().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({p}):{n}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for IrrDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, n)) in self.factors().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if n == 1 {
                write!(f, "V[{p}]")?;
            } else {
                write!(f, "{n}*V[{p}]")?;
            }
        }
        Ok(())
    }
}

/// Splits a character into irreducibles via `n_λ = ⟨f | χ_λ⟩`.
///
/// Fails if some multiplicity is negative or not an integer.
pub fn decompose(f: &ClassFunction) -> Result<IrrDecomposition> {
    let table = character_table(f.m);
    let order = BigRational::from_integer(BigInt::from(table.group_order().clone()));
    let weighted: Vec<BigRational> = f
        .values
        .iter()
        .zip(table.class_sizes())
        .map(|(v, s)| v * BigRational::from_integer(BigInt::from(s.clone())))
        .collect();
    let mut out = IrrDecomposition::zero(f.m);
    for (lambda, row) in table.partitions().iter().zip(table.rows()) {
        let n = weighted
            .iter()
            .zip(row)
            .fold(BigRational::zero(), |acc, (w, &c)| {
                acc + w * BigRational::from_integer(c.into())
            })
            / &order;
        if !n.is_integer() || n.is_negative() {
            return Err(Error::NotACharacter(format!(
                "multiplicity of V[{lambda}] would be {n}"
            )));
        }
        let n = n.to_integer().to_u64().ok_or_else(|| {
            Error::NotACharacter(format!("multiplicity of V[{lambda}] overflows"))
        })?;
        out.add_factor(lambda.clone(), n)?;
    }
    if out.character() != *f {
        return Err(Error::NotACharacter("reconstruction mismatch".into()));
    }
    Ok(out)
}

/// A permutation of type `t` in one-line notation: consecutive blocks, longest cycles first.
pub fn representative(t: &CycleType) -> Vec<usize> {
    let mut perm = Vec::with_capacity(t.degree());
    let mut start = 0;
    for &len in t.to_partition().parts() {
        for k in 0..len {
            perm.push(start + (k + 1) % len);
        }
        start += len;
    }
    perm
}

/// `ind_{S_n × S_{m-n}}^{S_m}(χ ⊠ trivial)` by direct enumeration.
///
/// For each class representative `g` the sum runs over the `n`-subsets `A`
/// of `[1, m]` (the cosets of the Young subgroup) with `g(A) = A`, adding
/// `χ(g|_A)`. Refuses `m` above [`BRUTE_FORCE_MAX_DEGREE`].
pub fn induce_bruteforce(chi: &ClassFunction, m: usize) -> Result<ClassFunction> {
    let n = chi.m;
    if m < n {
        return Err(Error::Precondition(format!(
            "cannot induce from S_{n} to S_{m}"
        )));
    }
    if m > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::BudgetExceeded {
            m,
            limit: BRUTE_FORCE_MAX_DEGREE,
        });
    }
    let classes = cycle_types(m);
    let mut values = Vec::with_capacity(classes.len());
    for t in &classes {
        let g = representative(t);
        let mut total = BigRational::zero();
        for_each_subset(m, n, &mut |subset: &[usize]| {
            let mut inside = vec![false; m];
            for &x in subset {
                inside[x] = true;
            }
            if subset.iter().any(|&x| !inside[g[x]]) {
                return;
            }
            let position: HashMap<usize, usize> =
                subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let restricted: Vec<usize> = subset.iter().map(|&x| position[&g[x]]).collect();
            let sub_type = CycleType::of_permutation(&restricted);
            total += chi.value(&sub_type).expect("restricted type has degree n");
        });
        values.push(total);
    }
    Ok(ClassFunction { m, values })
}

fn for_each_subset(m: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, m: usize, k: usize, current: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if current.len() == k {
            f(current);
            return;
        }
        let need = k - current.len();
        for x in start..=(m - need) {
            current.push(x);
            go(x + 1, m, k, current, f);
            current.pop();
        }
    }
    let mut current = Vec::with_capacity(k);
    go(0, m, k, &mut current, f);
}

/// The trivial character of `S_m`.
pub fn trivial(m: usize) -> ClassFunction {
    ClassFunction::constant(m, BigRational::one())
}
