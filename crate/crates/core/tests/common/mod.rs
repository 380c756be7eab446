//! Independent oracles, proptest strategies and golden CLI cases shared by the
//! integration test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use fbstab::characters::IrrDecomposition;
use fbstab::cli::run;
use fbstab::cyclepoly::{CharPolynomial, Monomial};
use fbstab::fbmodules::{FbModuleSpec, VConvention};
use fbstab::partitions::{partitions_of, CycleType, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

// ---------- brute-force permutation oracles ----------

/// Every permutation of `0..m`, as images.
pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Cycle lengths of a permutation, sorted decreasingly.
pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// A permutation with the given cycle lengths, built independently of the library.
pub fn permutation_of_type(lengths: &[usize]) -> Vec<usize> {
    let m: usize = lengths.iter().sum();
    let mut perm = vec![0; m];
    let mut start = 0;
    for &l in lengths {
        for k in 0..l {
            perm[start + k] = start + (k + 1) % l;
        }
        start += l;
    }
    perm
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// Number of ℓ-cycles γ of `S_m` with `gγ = γg`, by enumeration.
/// For `ℓ = 1` these are the fixed points of `g`.
pub fn commuting_cycles(g: &[usize], ell: usize, perms: &[Vec<usize>]) -> usize {
    if ell == 1 {
        return (0..g.len()).filter(|&i| g[i] == i).count();
    }
    perms
        .iter()
        .filter(|p| {
            let lens = cycle_lengths(p);
            !lens.is_empty() && lens[0] == ell && lens.iter().skip(1).all(|&l| l == 1)
        })
        .filter(|p| compose(g, p) == compose(p, g))
        .count()
}

/// Fixed points of `g` on row-assignments of shape `mu`: the permutation
/// character of the Young subgroup.
fn tabloid_character(mu: &[usize], g: &[usize]) -> i64 {
    fn go(i: usize, rows: &mut Vec<usize>, left: &mut Vec<usize>, g: &[usize]) -> i64 {
        if i == g.len() {
            return (0..g.len()).all(|j| rows[g[j]] == rows[j]) as i64;
        }
        let mut total = 0;
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                rows.push(r);
                total += go(i + 1, rows, left, g);
                rows.pop();
                left[r] += 1;
            }
        }
        total
    }
    go(0, &mut Vec::new(), &mut mu.to_vec(), g)
}

/// Semistandard tableaux of shape `lambda` and content `mu`, by enumeration.
fn kostka(lambda: &[usize], mu: &[usize]) -> i64 {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut BTreeMap<(usize, usize), usize>,
        left: &mut Vec<usize>,
    ) -> i64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for v in 0..left.len() {
            if left[v] == 0 {
                continue;
            }
            if c > 0 && grid[&(r, c - 1)] > v {
                continue;
            }
            if r > 0 && grid[&(r - 1, c)] >= v {
                continue;
            }
            left[v] -= 1;
            grid.insert((r, c), v);
            total += go(k + 1, cells, grid, left);
            grid.remove(&(r, c));
            left[v] += 1;
        }
        total
    }
    go(0, &cells, &mut BTreeMap::new(), &mut mu.to_vec())
}

/// Irreducible characters of `S_m` from permutation characters of Young
/// subgroups and Kostka numbers: `χ_μ = χ_{M^μ} - Σ_{λ ▷ μ} K_{λμ} χ_λ`.
/// Classes are listed in the order of `classes`.
pub fn young_rule_table(m: usize, classes: &[Vec<usize>]) -> BTreeMap<Partition, Vec<i64>> {
    let reps: Vec<Vec<usize>> = classes.iter().map(|t| permutation_of_type(t)).collect();
    let mut table: BTreeMap<Partition, Vec<i64>> = BTreeMap::new();
    // partitions_of is lexicographically decreasing, so dominating shapes come first
    for mu in partitions_of(m) {
        let mut row: Vec<i64> = reps
            .iter()
            .map(|g| tabloid_character(mu.parts(), g))
            .collect();
        for (lambda, chi) in &table {
            let k = kostka(lambda.parts(), mu.parts());
            for (x, y) in row.iter_mut().zip(chi) {
                *x -= k * y;
            }
        }
        table.insert(mu, row);
    }
    table
}

/// `p(n)` by Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> i64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[i] += sign * p[i - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                p[i] += sign * p[i - g2];
            }
            k += 1;
        }
    }
    p[n]
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

// ---------- proptest strategies ----------

pub fn arb_partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(Partition::from_unsorted)
}

pub fn arb_nonempty_partition(
    max_parts: usize,
    max_part: usize,
) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 1..=max_parts).prop_map(Partition::from_unsorted)
}

pub fn arb_cycle_type(max_m: usize) -> impl Strategy<Value = CycleType> {
    (0..=max_m).prop_flat_map(|m| {
        let parts = partitions_of(m);
        (0..parts.len()).prop_map(move |i| CycleType::from_partition(&parts[i]))
    })
}

pub fn arb_decomposition(max_n: usize) -> impl Strategy<Value = IrrDecomposition> {
    (0..=max_n).prop_flat_map(|n| {
        let parts = partitions_of(n);
        let k = parts.len();
        prop::collection::vec((0..k, 1u64..4), 0..4).prop_map(move |pairs| {
            IrrDecomposition::from_pairs(n, pairs.into_iter().map(|(i, c)| (parts[i].clone(), c)))
                .unwrap()
        })
    })
}

pub fn arb_poly(
    max_var: usize,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = CharPolynomial> {
    let term = (
        prop::collection::vec(0..=max_exp, 0..=max_var),
        -6i64..=6,
        1i64..=4,
    );
    prop::collection::vec(term, 0..=max_terms).prop_map(|terms| {
        let mut p = CharPolynomial::zero();
        for (exps, num, den) in terms {
            let c = BigRational::new(num.into(), den.into());
            p = p.add(&CharPolynomial::monomial(Monomial::from_exponents(exps), c));
        }
        p
    })
}

pub fn arb_spec() -> impl Strategy<Value = FbModuleSpec> {
    let leaf = prop_oneof![
        arb_decomposition(4).prop_map(FbModuleSpec::Projective),
        (arb_partition(3, 3), any::<bool>()).prop_map(|(lambda, cf)| FbModuleSpec::VFamily {
            lambda,
            convention: if cf {
                VConvention::ChurchFarb
            } else {
                VConvention::Socle
            },
        }),
        arb_nonempty_partition(3, 3).prop_map(FbModuleSpec::CycleModule),
    ];
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FbModuleSpec::tensor(a, b)),
            prop::collection::vec(inner.clone(), 0..4).prop_map(FbModuleSpec::DirectSum),
            (inner.clone(), 0usize..12).prop_map(|(c, n)| FbModuleSpec::truncate(c, n)),
            (inner.clone(), 0usize..6).prop_map(|(c, p)| FbModuleSpec::WeightAtMost {
                child: Box::new(c),
                p
            }),
            (inner, 0usize..6).prop_map(|(c, p)| FbModuleSpec::WeightAbove {
                child: Box::new(c),
                p
            }),
        ]
    })
}

// ---------- golden CLI cases ----------

pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("chartable_3", &["chartable", "3"]),
    ("chartable_4_json", &["chartable", "4", "--json"]),
    ("frobpoly_3_2_2", &["frobpoly", "3,2,2"]),
    (
        "frobpoly_socle_1_1_json",
        &["frobpoly", "socle:1,1", "--json"],
    ),
    ("pieri_3_2_2_10", &["pieri", "3,2,2", "10"]),
    ("pieri_1_3_json", &["pieri", "1", "3", "--json"]),
    (
        "decompose_3",
        &["decompose", "--m", "3", "--values", "0,1,3"],
    ),
    (
        "decompose_4_json",
        &["decompose", "--m", "4", "--values", "0,1,0,2,4", "--json"],
    ),
    (
        "decompose_not_character",
        &["decompose", "--m", "2", "--values", "1,0"],
    ),
    ("cyclepoly_1", &["cyclepoly", "1"]),
    ("cyclepoly_3", &["cyclepoly", "3"]),
    ("cyclepoly_4_inverse", &["cyclepoly", "4", "--inverse"]),
    (
        "rankscan_cycle_2",
        &["rankscan", "--spec", "(cycle 2)", "--mmax", "7"],
    ),
    (
        "rankscan_proj_json",
        &[
            "rankscan",
            "--spec",
            "(proj 1 \"1\")",
            "--mmax",
            "6",
            "--json",
            "--seed",
            "7",
        ],
    ),
    (
        "rankscan_tensor",
        &[
            "rankscan",
            "--spec",
            "(tensor (vfam 1,1) (vfam 1,1))",
            "--mmax",
            "8",
        ],
    ),
    (
        "rankscan_parse_error",
        &["rankscan", "--spec", "(vfam 2,1", "--mmax", "5"],
    ),
    (
        "rankscan_budget",
        &[
            "rankscan",
            "--spec",
            "(cycle 1)",
            "--mmax",
            "9",
            "--budget",
            "8",
        ],
    ),
    ("tensorweight_1_1_5", &["tensorweight", "1", "1", "5"]),
    (
        "tensorweight_2_1_json",
        &["tensorweight", "2", "1", "6", "--json"],
    ),
    ("rho_x1_squared", &["rho", "--poly", "X1^2", "--m", "3"]),
    (
        "rho_json",
        &["rho", "--poly", "X1 + 2*X2 - 2", "--m", "3", "--json"],
    ),
    (
        "rho_parse_error",
        &["rho", "--poly", "X1 + * X2", "--m", "3"],
    ),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Exit code, stdout and stderr of a CLI invocation, in golden-file form.
pub fn golden_render(args: &[&str]) -> String {
    let out = run(std::iter::once("fbstab").chain(args.iter().copied()));
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.code, out.stdout, out.stderr
    )
}

/// Compares every case with its file; `UPDATE_GOLDEN=1` rewrites the files.
/// Returns the names of mismatching cases.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    let mut bad = Vec::new();
    for (name, args) in GOLDEN_CASES {
        let path = dir.join(format!("{name}.txt"));
        let actual = golden_render(args);
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == actual => {}
            _ => bad.push(name.to_string()),
        }
    }
    bad
}
