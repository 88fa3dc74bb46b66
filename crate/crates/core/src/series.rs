//! Filtration series of `G_k` and their factor tables.
//!
//! Every series is computed from its defining recursion; where the structure
//! results give a closed form for a term, equality is recorded per term in
//! [`SeriesTable::closed_form_match`] instead of being silently assumed.

use crate::error::{Error, Result};
use crate::group::GroupContext;
use crate::subgroup::Subgroup;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Lower central series `gamma_1 = G`, `gamma_(i+1) = [gamma_i, G]`.
    Gamma,
    /// Lower 2-series `P_1 = G`, `P_(i+1) = [P_i, G] P_i^2`.
    Lower2,
    /// Dimension subgroup (Jennings) series
    /// `D_1 = G`, `D_i = (D_ceil(i/2))^2 prod_(0<j<i) [D_j, D_(i-j)]`.
    Dimension,
    /// Frattini series `Phi_0 = G`, `Phi_(i+1) = Phi_i^2 [Phi_i, Phi_i]`.
    Frattini,
    /// 2-power series `G^(2^i)`.
    TwoPower,
    /// Iterated 2-power series `I_0 = G`, `I_j = I_(j-1)^2`.
    Iterated,
    /// Images of the defining chain `R_i`, for `1 <= i <= k`.
    RSeries,
    /// `N_0 = G`, `N_i = [R_i, G] R_i^2` for `1 <= i <= k`.
    NSeries,
}

impl SeriesKind {
    pub fn short_name(&self) -> &'static str {
        match self {
            SeriesKind::Gamma => "gamma",
            SeriesKind::Lower2 => "L",
            SeriesKind::Dimension => "D",
            SeriesKind::Frattini => "F",
            SeriesKind::TwoPower => "P",
            SeriesKind::Iterated => "I",
            SeriesKind::RSeries => "R",
            SeriesKind::NSeries => "N",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// A named filtration series as a list of subgroups with per-step factor
/// ranks (log2 of successive indices).
#[derive(Debug, Clone)]
pub struct SeriesTable {
    kind: SeriesKind,
    /// Subscript of `terms[0]` in the conventional numbering.
    start_index: u32,
    terms: Vec<Subgroup>,
    factor_ranks: Vec<u32>,
    /// Per-term: does the term agree with its structural closed form?
    closed_form_match: Vec<bool>,
}

impl SeriesTable {
    fn new(kind: SeriesKind, start_index: u32, terms: Vec<Subgroup>, closed: Vec<bool>) -> Self {
        let factor_ranks = terms
            .windows(2)
            .map(|w| w[0].rank() - w[1].rank())
            .collect();
        SeriesTable {
            kind,
            start_index,
            terms,
            factor_ranks,
            closed_form_match: closed,
        }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn start_index(&self) -> u32 {
        self.start_index
    }

    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    pub fn factor_ranks(&self) -> &[u32] {
        &self.factor_ranks
    }

    pub fn closed_form_match(&self) -> &[bool] {
        &self.closed_form_match
    }

    /// Term by its subscript in the conventional numbering.
    pub fn term(&self, subscript: u32) -> Option<&Subgroup> {
        subscript
            .checked_sub(self.start_index)
            .and_then(|i| self.terms.get(i as usize))
    }

    /// Number of nontrivial steps: the "length" of the series.
    pub fn length(&self) -> u32 {
        self.terms.iter().filter(|t| !t.is_trivial()).count() as u32
    }

    /// Descending chain with normal terms; for a standard filtration the
    /// first term is `G_k`, the last is trivial and the ranks sum to
    /// `log_2 |G_k|`.
    pub fn check_well_formed(&self) -> Result<()> {
        for w in self.terms.windows(2) {
            if !w[0].contains_subgroup(&w[1]) {
                return Err(Error::Constraint(format!(
                    "series {} is not descending",
                    self.kind
                )));
            }
        }
        for t in &self.terms {
            if !t.is_normal() {
                return Err(Error::Constraint(format!(
                    "series {} has a non-normal term",
                    self.kind
                )));
            }
        }
        let standard = !matches!(self.kind, SeriesKind::RSeries);
        if standard {
            let first = self.terms.first().expect("nonempty series");
            let last = self.terms.last().expect("nonempty series");
            if !first.is_full_group() || !last.is_trivial() {
                return Err(Error::Constraint(format!(
                    "series {} must run from G_k to the trivial subgroup",
                    self.kind
                )));
            }
            let sum: u32 = self.factor_ranks.iter().sum();
            if sum != first.ctx().log_order() {
                return Err(Error::Constraint(format!(
                    "series {} factor ranks sum to {sum}, expected log order",
                    self.kind
                )));
            }
        }
        Ok(())
    }
}

fn full(ctx: GroupContext) -> Subgroup {
    Subgroup::full_group(ctx)
}

/// Lower central series, with the generator description of each factor from
/// the structure results as the per-term closed form:
/// `gamma_(2i) = <c_(2i)> gamma_(2i+1)` and
/// `gamma_(2i+1) = <c_(2i+1), z_(2i+1)> gamma_(2i+2)` (the `z` generator
/// dropped at `i = 2^(k-1)`).
pub fn lower_central_series(ctx: GroupContext) -> SeriesTable {
    let g = full(ctx);
    let mut terms = vec![g.clone()];
    while !terms.last().unwrap().is_trivial() {
        let next = terms
            .last()
            .unwrap()
            .commutator(&g)
            .expect("lower central terms are normal");
        terms.push(next);
    }
    let mut closed = vec![true]; // gamma_1 = G = <x,y> gamma_2
    for idx in 1..terms.len() {
        let m = idx as u32 + 1;
        if terms[idx].is_trivial() {
            closed.push(terms[idx].is_trivial());
            continue;
        }
        let mut gens = vec![ctx.c_word(m).unwrap()];
        if m % 2 == 1 && (m - 1) / 2 != ctx.n_c() {
            gens.push(ctx.z_word(m).unwrap());
        }
        if let Some(next) = terms.get(idx + 1) {
            gens.extend_from_slice(next.basis());
        }
        closed.push(terms[idx].equals(&Subgroup::closure(ctx, &gens)));
    }
    SeriesTable::new(SeriesKind::Gamma, 1, terms, closed)
}

/// Lower 2-series; closed form `P_i = <x^(2^(i-1))> gamma_i` for `i >= 3`,
/// and `P_2 = <x^2, y^2, [y,x]> P_3`.
pub fn lower_2_series(ctx: GroupContext, log_cap: u32) -> Result<SeriesTable> {
    let g = full(ctx);
    let gamma = lower_central_series(ctx);
    let mut terms = vec![g.clone()];
    while !terms.last().unwrap().is_trivial() {
        let p = terms.last().unwrap();
        let next = p.commutator(&g)?.product(&p.power_subgroup(2, log_cap)?);
        terms.push(next);
    }
    let mut closed = vec![true];
    for idx in 1..terms.len() {
        let i = idx as u32 + 1;
        let t = &terms[idx];
        let ok = if i == 2 {
            let mut gens = vec![
                ctx.x().pow(2),
                ctx.y_squared(),
                ctx.y().comm(&ctx.x()).unwrap(),
            ];
            if let Some(next) = terms.get(idx + 1) {
                gens.extend_from_slice(next.basis());
            }
            t.equals(&Subgroup::closure(ctx, &gens))
        } else {
            let mut gens = vec![ctx.x().pow(1i64 << (i - 1))];
            if let Some(gi) = gamma.term(i) {
                gens.extend_from_slice(gi.basis());
            }
            t.equals(&Subgroup::closure(ctx, &gens))
        };
        closed.push(ok);
    }
    Ok(SeriesTable::new(SeriesKind::Lower2, 1, terms, closed))
}

fn ceil_log2(i: u32) -> u32 {
    debug_assert!(i >= 1);
    32 - (i - 1).leading_zeros()
}

/// Dimension subgroup series, computed from the abstract recursion; the
/// per-term closed form `D_i = G^(2^l(i)) gamma_ceil(i/2)^2 gamma_i` with
/// `l(i) = ceil(log2 i)` is recorded per term.
pub fn dimension_series(ctx: GroupContext, log_cap: u32) -> Result<SeriesTable> {
    let gamma = lower_central_series(ctx);
    let trivial = Subgroup::trivial(ctx);
    let gamma_at = |i: u32| gamma.term(i).unwrap_or(&trivial);

    let mut terms = vec![full(ctx)];
    while !terms.last().unwrap().is_trivial() {
        let i = terms.len() as u32 + 1;
        let half = &terms[(i as usize).div_ceil(2) - 1];
        let mut next = half.power_subgroup(2, log_cap)?;
        for j in 1..i {
            let comm = terms[j as usize - 1].commutator(&terms[(i - j) as usize - 1])?;
            next = next.product(&comm);
        }
        terms.push(next);
    }

    // G^(2^l) for every l the closed form needs.
    let g = full(ctx);
    let max_l = ceil_log2(terms.len() as u32 + 1);
    let mut g_pow: Vec<Subgroup> = vec![g.clone()];
    for l in 1..=max_l {
        g_pow.push(g.power_subgroup(1u64 << l, log_cap)?);
    }

    let mut closed = Vec::with_capacity(terms.len());
    for (idx, term) in terms.iter().enumerate() {
        let i = idx as u32 + 1;
        let l = ceil_log2(i);
        let half_sq = gamma_at(i.div_ceil(2)).power_subgroup(2, log_cap)?;
        let cf = g_pow[l as usize].product(&half_sq).product(gamma_at(i));
        closed.push(term.equals(&cf));
    }
    Ok(SeriesTable::new(SeriesKind::Dimension, 1, terms, closed))
}

/// Frattini series; closed forms `Phi_1 = <x^2, y^2, [y,x], [y,x,x]> Phi_2`
/// and `Phi_i = <x^(2^i), z_(2^i - 1)> gamma_(2^i)` for `2 <= i <= k`.
pub fn frattini_series(ctx: GroupContext, log_cap: u32) -> Result<SeriesTable> {
    let gamma = lower_central_series(ctx);
    let trivial = Subgroup::trivial(ctx);
    let mut terms = vec![full(ctx)];
    while !terms.last().unwrap().is_trivial() {
        let p = terms.last().unwrap();
        let next = p.power_subgroup(2, log_cap)?.product(&p.commutator(p)?);
        terms.push(next);
    }
    let mut closed = vec![true];
    for idx in 1..terms.len() {
        let i = idx as u32;
        let t = &terms[idx];
        let ok = if i == 1 {
            let mut gens = vec![
                ctx.x().pow(2),
                ctx.y_squared(),
                ctx.c_word(2).unwrap(),
                ctx.c_word(3).unwrap(),
            ];
            if let Some(next) = terms.get(idx + 1) {
                gens.extend_from_slice(next.basis());
            }
            t.equals(&Subgroup::closure(ctx, &gens))
        } else if i <= ctx.k() {
            let mut gens = vec![ctx.x().pow(1i64 << i), ctx.z_word((1 << i) - 1).unwrap()];
            gens.extend_from_slice(gamma.term(1 << i).unwrap_or(&trivial).basis());
            t.equals(&Subgroup::closure(ctx, &gens))
        } else {
            t.is_trivial()
        };
        closed.push(ok);
    }
    Ok(SeriesTable::new(SeriesKind::Frattini, 0, terms, closed))
}

fn iterated_terms(ctx: GroupContext, log_cap: u32) -> Result<Vec<Subgroup>> {
    let mut terms = vec![full(ctx)];
    while !terms.last().unwrap().is_trivial() {
        terms.push(terms.last().unwrap().power_subgroup(2, log_cap)?);
    }
    Ok(terms)
}

fn two_power_terms(ctx: GroupContext, log_cap: u32) -> Result<Vec<Subgroup>> {
    let g = full(ctx);
    let mut terms = vec![g.clone()];
    let mut i = 1;
    while !terms.last().unwrap().is_trivial() {
        terms.push(g.power_subgroup(1u64 << i, log_cap)?);
        i += 1;
    }
    Ok(terms)
}

/// 2-power series `G^(2^i)`; the per-term flag records coincidence with the
/// iterated 2-power series.
pub fn two_power_series(ctx: GroupContext, log_cap: u32) -> Result<SeriesTable> {
    let terms = two_power_terms(ctx, log_cap)?;
    let iterated = iterated_terms(ctx, log_cap)?;
    let closed = coincidence_flags(&terms, &iterated);
    Ok(SeriesTable::new(SeriesKind::TwoPower, 0, terms, closed))
}

/// Iterated 2-power series `I_j`; flags record coincidence with `G^(2^j)`.
pub fn iterated_power_series(ctx: GroupContext, log_cap: u32) -> Result<SeriesTable> {
    let terms = iterated_terms(ctx, log_cap)?;
    let two_power = two_power_terms(ctx, log_cap)?;
    let closed = coincidence_flags(&terms, &two_power);
    Ok(SeriesTable::new(SeriesKind::Iterated, 0, terms, closed))
}

fn coincidence_flags(terms: &[Subgroup], other: &[Subgroup]) -> Vec<bool> {
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| other.get(i).map(|o| t.equals(o)).unwrap_or(t.is_trivial()))
        .collect()
}

/// Images of `R_i` and `N_i = [R_i, G] R_i^2` in `G_k`, for `i <= k`.
/// The `N` flags record `N_i <= G^(2^i)` with `log_2 |G^(2^i) : N_i| <= 4`.
pub fn rn_series(ctx: GroupContext, log_cap: u32) -> Result<(SeriesTable, SeriesTable)> {
    let g = full(ctx);
    let mut r_terms = Vec::new();
    let mut n_terms = vec![g.clone()]; // N_0 = G by convention
    for i in 1..=ctx.k() {
        let mut gens = vec![ctx.x().pow(1i64 << i), ctx.y_squared()];
        for d in 1..=(1u32 << (i - 1)) {
            gens.push(ctx.c_d(d).unwrap());
        }
        let r = Subgroup::normal_closure(ctx, &gens);
        let n = r.commutator(&g)?.product(&r.power_subgroup(2, log_cap)?);
        r_terms.push(r);
        n_terms.push(n);
    }

    // R_k maps onto Z_k in G_k.
    let mut zk_gens = vec![ctx.x().pow(1i64 << ctx.k()), ctx.y_squared()];
    for d in 1..=ctx.n_c() {
        zk_gens.push(ctx.c_d(d).unwrap());
    }
    let zk = Subgroup::normal_closure(ctx, &zk_gens);
    let r_closed: Vec<bool> = r_terms
        .iter()
        .enumerate()
        .map(|(idx, r)| idx as u32 + 1 != ctx.k() || r.equals(&zk))
        .collect();

    let n_closed: Vec<bool> = n_terms
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let gp = g
                .power_subgroup(1u64 << i, log_cap)
                .expect("power subgroup feasible when N_i was");
            gp.contains_subgroup(n) && gp.rank() - n.rank() <= 4
        })
        .collect();

    Ok((
        SeriesTable::new(SeriesKind::RSeries, 1, r_terms, r_closed),
        SeriesTable::new(SeriesKind::NSeries, 0, n_terms, n_closed),
    ))
}

/// `gamma_m(G_k) ∩ Z_k`, isomorphic to `C_2^nu(m)` with
/// `nu(m) = 2^(k-1) - floor(m/2) + 1`, for `2 <= m <= 2^k`.
pub fn gamma_cap_z(ctx: GroupContext, m: u32, log_cap: u32) -> Result<Subgroup> {
    if !(2..=ctx.n_y()).contains(&m) {
        return Err(Error::IndexOutOfRange {
            what: "gamma_cap_z level",
            index: m as u64,
            lo: 2,
            hi: ctx.n_y() as u64,
        });
    }
    let gamma = lower_central_series(ctx);
    let mut zk_gens = vec![ctx.x().pow(1i64 << ctx.k()), ctx.y_squared()];
    for d in 1..=ctx.n_c() {
        zk_gens.push(ctx.c_d(d).unwrap());
    }
    let zk = Subgroup::normal_closure(ctx, &zk_gens);
    gamma
        .term(m)
        .expect("gamma series reaches 2^k")
        .intersection(&zk, log_cap)
}

/// `nu(m) = 2^(k-1) - floor(m/2) + 1`, the rank of `gamma_m ∩ Z_k`.
pub fn nu(ctx: &GroupContext, m: u32) -> u32 {
    ctx.n_c() - m / 2 + 1
}

/// The structural generating set of `G^(2^k)`: `<x^(2^k), w, [w,x]>`.
/// Equality with the exhaustive power subgroup holds by two-sided
/// containment wherever enumeration is feasible (k <= 3); this shortcut
/// makes the top 2-power term available at larger k.
pub fn structural_top_power(ctx: GroupContext) -> Subgroup {
    let w = ctx.w();
    Subgroup::closure(
        ctx,
        &[
            ctx.x().pow(1i64 << ctx.k()),
            w,
            w.comm_unchecked(&ctx.x()),
        ],
    )
}

/// Expected lower-central factor ranks: `[k+3, 1, 2, 1, 2, ..., 1, (2|1)]`.
pub fn expected_gamma_ranks(ctx: &GroupContext) -> Vec<u32> {
    let mut ranks = vec![ctx.k() + 3];
    for m in 2..=(ctx.n_y() + 1) {
        if m % 2 == 0 {
            ranks.push(1);
        } else {
            ranks.push(if (m - 1) / 2 == ctx.n_c() { 1 } else { 2 });
        }
    }
    ranks
}

/// Expected lower 2-series factor ranks.
pub fn expected_lower2_ranks(ctx: &GroupContext) -> Vec<u32> {
    let k = ctx.k();
    let mut ranks = vec![2, 3];
    for i in 3..=(ctx.n_y() + 1) {
        let r = if i == ctx.n_y() + 1 {
            1
        } else if i <= k + 1 {
            if i % 2 == 1 {
                3
            } else {
                2
            }
        } else if i % 2 == 1 {
            2
        } else {
            1
        };
        ranks.push(r);
    }
    ranks
}

/// Expected dimension-series factor ranks.
pub fn expected_dimension_ranks(ctx: &GroupContext) -> Vec<u32> {
    let n = ctx.n_y();
    let mut ranks = Vec::new();
    for i in 1..=(n + 2) {
        let r = if i == 1 {
            2
        } else if i.is_power_of_two() && i <= n {
            3
        } else if i == n + 1 {
            0
        } else if i == n + 2 {
            1
        } else if i % 2 == 0 {
            2
        } else {
            1
        };
        ranks.push(r);
    }
    ranks
}

/// Expected Frattini factor ranks: `[2, 4, 2^i + 2^(i-1) + 1 ..., 4]`.
pub fn expected_frattini_ranks(ctx: &GroupContext) -> Vec<u32> {
    let k = ctx.k();
    let mut ranks = vec![2, 4];
    for i in 2..k {
        ranks.push((1 << i) + (1 << (i - 1)) + 1);
    }
    if k >= 2 {
        ranks.push(4);
    }
    ranks
}
