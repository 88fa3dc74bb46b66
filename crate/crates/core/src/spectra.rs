//! Named subgroups and exact Hausdorff-dimension ratios.
//!
//! Hausdorff dimension with respect to a filtration is a lower limit over
//! the levels of the profinite group; at any fixed level the quotient data
//! is exact.  The engine therefore reports per-level rationals
//! `log|K S_i : S_i| / log|G : S_i|` together with the closed-form limit
//! target, and never extrapolates numerically.

use crate::error::{Error, Result};
use crate::group::{Element, GroupContext};
use crate::series::{lower_2_series, SeriesKind, SeriesTable};
use crate::subgroup::Subgroup;
use std::fmt;

/// The distinguished subgroups of `G_k` used for the spectrum computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSubgroup {
    /// Image of the central kernel: `<y^2, [y_0,y_d] (1 <= d <= 2^(k-1))>^G`.
    Z,
    /// `Z_k = Z <x^(2^k)>`.
    Zk,
    /// Preimage of the wreath base group: `<y>^G Z`.
    H,
    /// `K(m, n) = <y_j : j mod 2^n in {0, .., m-1}>`.
    K { m: u32, n: u32 },
    /// `L(m, n) = <y_j : j mod 2^n in {0, ±1, .., ±(m-1)}> Z`.
    L { m: u32, n: u32 },
    /// The whole group (ratio 1 at every level).
    FullGroup,
    /// The trivial subgroup (ratio 0 at every level).
    Trivial,
}

impl fmt::Display for NamedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSubgroup::Z => write!(f, "Z"),
            NamedSubgroup::Zk => write!(f, "Zk"),
            NamedSubgroup::H => write!(f, "H"),
            NamedSubgroup::K { m, n } => write!(f, "K({m},{n})"),
            NamedSubgroup::L { m, n } => write!(f, "L({m},{n})"),
            NamedSubgroup::FullGroup => write!(f, "G"),
            NamedSubgroup::Trivial => write!(f, "1"),
        }
    }
}

fn check_mn(ctx: &GroupContext, m: u32, n: u32) -> Result<()> {
    if ctx.k() < n + 1 {
        return Err(Error::Constraint(format!(
            "K/L(m, n) needs k >= n + 1; got k = {}, n = {n}",
            ctx.k()
        )));
    }
    if m < 1 || m > (1 << n) {
        return Err(Error::Constraint(format!(
            "K/L(m, n) needs 1 <= m <= 2^n; got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// Generators of `Z` (all central of order 2).
fn z_generators(ctx: &GroupContext) -> Vec<Element> {
    let mut gens = vec![ctx.y_squared()];
    for d in 1..=ctx.n_c() {
        gens.push(ctx.c_d(d).unwrap());
    }
    gens
}

/// Build a named subgroup of `G_k`.
pub fn build_named(ctx: &GroupContext, spec: NamedSubgroup) -> Result<Subgroup> {
    match spec {
        NamedSubgroup::Z => Ok(Subgroup::normal_closure(*ctx, &z_generators(ctx))),
        NamedSubgroup::Zk => {
            let mut gens = z_generators(ctx);
            gens.push(ctx.x().pow(1i64 << ctx.k()));
            Ok(Subgroup::normal_closure(*ctx, &gens))
        }
        NamedSubgroup::H => {
            let base = Subgroup::normal_closure(*ctx, &[ctx.y()]);
            Ok(base.product(&build_named(ctx, NamedSubgroup::Z)?))
        }
        NamedSubgroup::K { m, n } => {
            check_mn(ctx, m, n)?;
            let modulus = 1u32 << n;
            let gens: Vec<Element> = (0..ctx.n_y())
                .filter(|j| j % modulus < m)
                .map(|j| ctx.y_i(j).unwrap())
                .collect();
            Ok(Subgroup::closure(*ctx, &gens))
        }
        NamedSubgroup::L { m, n } => {
            check_mn(ctx, m, n)?;
            let modulus = 1u32 << n;
            let gens: Vec<Element> = (0..ctx.n_y())
                .filter(|j| {
                    let r = j % modulus;
                    r < m || modulus - r < m
                })
                .map(|j| ctx.y_i(j).unwrap())
                .collect();
            let base = Subgroup::closure(*ctx, &gens);
            Ok(base.product(&build_named(ctx, NamedSubgroup::Z)?))
        }
        NamedSubgroup::FullGroup => Ok(Subgroup::full_group(*ctx)),
        NamedSubgroup::Trivial => Ok(Subgroup::trivial(*ctx)),
    }
}

/// Exact nonnegative rational, kept fully reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio denominator must be positive");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One exact finite-level ratio `log|K S_i : S_i| / log|G : S_i|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioPoint {
    pub kind: SeriesKind,
    pub level: u32,
    /// `log_2 |K S_i : S_i|`.
    pub log_sub_index: u32,
    /// `log_2 |G_k : S_i|`.
    pub log_group_index: u32,
    pub value: Ratio,
}

/// Ratio of `K` against the series term with the given subscript.
pub fn hdim_ratio(table: &SeriesTable, sub: &Subgroup, level: u32) -> Result<RatioPoint> {
    let term = table.term(level).ok_or_else(|| {
        Error::IndexOutOfRange {
            what: "series level",
            index: level as u64,
            lo: table.start_index() as u64,
            hi: (table.start_index() + table.terms().len() as u32 - 1) as u64,
        }
    })?;
    if term.is_full_group() {
        return Err(Error::UndefinedRatio);
    }
    let num = sub.product(term).rank() - term.rank();
    let den = term.log_index();
    Ok(RatioPoint {
        kind: table.kind(),
        level,
        log_sub_index: num,
        log_group_index: den,
        value: Ratio::new(num as u64, den as u64),
    })
}

/// The limiting value for the pair (named subgroup, series), where one
/// is stated.
pub fn target_ratio(sub: NamedSubgroup, kind: SeriesKind) -> Option<Ratio> {
    use NamedSubgroup::*;
    use SeriesKind::*;
    match (sub, kind) {
        (Z, TwoPower) | (Z, Iterated) | (Z, Dimension) | (Z, Frattini) => Some(Ratio::new(1, 3)),
        (Z, Lower2) => Some(Ratio::new(1, 5)),
        (H, Lower2) => Some(Ratio::new(3, 5)),
        (H, TwoPower) | (H, Iterated) | (H, Dimension) | (H, Frattini) => Some(Ratio::new(1, 1)),
        (FullGroup, _) => Some(Ratio::new(1, 1)),
        (Trivial, _) => Some(Ratio::new(0, 1)),
        _ => None,
    }
}

/// Ratios across every level with nontrivial index.
pub fn spectrum_table(table: &SeriesTable, sub: &Subgroup) -> Vec<RatioPoint> {
    let mut rows = Vec::new();
    for i in 0..table.terms().len() as u32 {
        let level = table.start_index() + i;
        match hdim_ratio(table, sub, level) {
            Ok(p) => rows.push(p),
            Err(Error::UndefinedRatio) => continue,
            Err(_) => unreachable!("level is in range"),
        }
    }
    rows
}

/// Finite-level ingredients of the key limit computation: the structure of
/// `K ∩ Z`, the index set `D`, and the ratios restricted to `Z`.
#[derive(Debug, Clone)]
pub struct KeyCheck {
    pub m: u32,
    pub n: u32,
    /// `log_2 |K ∩ Z|`; the structure result predicts `(2m-1) 2^(k-n-1) + 1`.
    pub k_cap_z_rank: u32,
    pub predicted_k_cap_z_rank: u32,
    /// `K ∩ Z` equals the displayed generating set
    /// `<y^2, [y_0, y_j] : j ≡ 0, ±1, .., ±(m-1) mod 2^n>`.
    pub k_cap_z_matches_displayed_gens: bool,
    /// `log_2 |Z|`, predicted `2^(k-1) + 1`.
    pub z_rank: u32,
    /// `D = {j : some g in L has g ≡ c_j mod P_(j+1) Z}` within `1 <= j < 2^k`.
    pub d_set: Vec<u32>,
    /// `({1, .., 2m-1} + 2^n N_0)` within the same range.
    pub d_expected: Vec<u32>,
    /// Per-level `log|(K∩Z)(P_i∩Z) : P_i∩Z| / log|Z : P_i∩Z|`.
    pub restricted_ratios: Vec<(u32, Ratio)>,
    /// `log|K∩Z| / log|Z|`, the value at the fully collapsed level.
    pub full_level_ratio: Ratio,
    /// The limit `(2m-1)/2^n`.
    pub target: Ratio,
    /// `3/5 + m/(5 * 2^(n-1))`, the spectrum point this pair realizes, when
    /// `2^(n-1) < m <= 2^n`.
    pub spectrum_point: Option<Ratio>,
}

impl KeyCheck {
    pub fn rank_matches(&self) -> bool {
        self.k_cap_z_rank == self.predicted_k_cap_z_rank
    }

    pub fn d_set_matches(&self) -> bool {
        self.d_set == self.d_expected
    }
}

/// Run the finite-level checks behind the key limit, for `K(m, n)`.
pub fn the_key_check(ctx: &GroupContext, m: u32, n: u32, log_cap: u32) -> Result<KeyCheck> {
    check_mn(ctx, m, n)?;
    let z = build_named(ctx, NamedSubgroup::Z)?;
    let k_sub = build_named(ctx, NamedSubgroup::K { m, n })?;
    let l_sub = build_named(ctx, NamedSubgroup::L { m, n })?;

    let k_cap_z = k_sub.intersection(&z, log_cap)?;
    let predicted = (2 * m - 1) * (1 << (ctx.k() - n - 1)) + 1;

    // Displayed generating set of K ∩ Z.
    let modulus = 1u32 << n;
    let mut displayed = vec![ctx.y_squared()];
    for j in 1..=ctx.n_c() {
        let r = j % modulus;
        if r < m || modulus - r < m {
            displayed.push(ctx.c_d(j).unwrap());
        }
    }
    let displayed = Subgroup::closure(*ctx, &displayed);

    // D-set by sifting c_j against L P_(j+1) Z (Z is already inside L).
    let lower2 = lower_2_series(*ctx, log_cap)?;
    let mut d_set = Vec::new();
    for j in 1..ctx.n_y() {
        let c_j = ctx.c_word(j).unwrap();
        let modded = l_sub.product(lower2.term(j + 1).expect("lower 2-series is long enough"));
        if modded.contains(&c_j) {
            d_set.push(j);
        }
    }
    let d_expected: Vec<u32> = (1..ctx.n_y())
        .filter(|j| {
            let r = j % modulus;
            (1..=2 * m - 1).any(|d| d % modulus == r)
        })
        .collect();

    // Ratios restricted to Z, level by level.
    let mut restricted = Vec::new();
    for i in 2..=(lower2.terms().len() as u32) {
        let p_i = match lower2.term(i) {
            Some(t) => t,
            None => break,
        };
        let piz = p_i.intersection(&z, log_cap)?;
        let den = z.rank() - piz.rank();
        if den == 0 {
            continue;
        }
        let num = k_cap_z.product(&piz).rank() - piz.rank();
        restricted.push((i, Ratio::new(num as u64, den as u64)));
    }

    Ok(KeyCheck {
        m,
        n,
        k_cap_z_rank: k_cap_z.rank(),
        predicted_k_cap_z_rank: predicted,
        k_cap_z_matches_displayed_gens: k_cap_z.equals(&displayed),
        z_rank: z.rank(),
        d_set,
        d_expected,
        restricted_ratios: restricted,
        full_level_ratio: Ratio::new(k_cap_z.rank() as u64, z.rank() as u64),
        target: Ratio::new((2 * m - 1) as u64, modulus as u64),
        spectrum_point: (2 * m > modulus).then(|| {
            Ratio::new((3 * modulus + 2 * m) as u64, (5 * modulus) as u64)
        }),
    })
}
