//! Independent models and brute-force oracles.
//!
//! `W_k = C2 wr C_(2^k)` is the image of `G_k` under the projection that
//! kills the central kernel `Z_k`.  An element is a pair (shift, bit-vector)
//! with the group law `(t, v) (t', v') = (t + t', rot(v, t') ^ v')`, the
//! rotation convention matching `y_i = y^(x^i)`.  The projection, a
//! breadth-first closure, the relator report and the power-of-a-product
//! collection identities all live here; none of them trusts anything beyond
//! plain multiplication in the normal-form engine.

use crate::error::{Error, Result};
use crate::group::{Element, GroupContext};
use crate::subgroup::Subgroup;
use std::collections::HashSet;

/// Element of `W_k` as (shift mod `2^k`, base-group bit-vector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WreathElement {
    k: u8,
    t: u32,
    v: u64,
}

impl WreathElement {
    pub fn identity(ctx: &GroupContext) -> Self {
        WreathElement {
            k: ctx.k() as u8,
            t: 0,
            v: 0,
        }
    }

    pub fn shift(&self) -> u32 {
        self.t
    }

    pub fn bits(&self) -> u64 {
        self.v
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.v == 0
    }

    fn n(&self) -> u32 {
        1u32 << self.k
    }

    fn rot(&self, v: u64, m: u32) -> u64 {
        let n = self.n();
        let m = m % n;
        if m == 0 {
            return v;
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        ((v << m) | (v >> (n - m))) & mask
    }

    pub fn mul(&self, rhs: &WreathElement) -> WreathElement {
        assert_eq!(self.k, rhs.k, "wreath elements from different W_k");
        WreathElement {
            k: self.k,
            t: (self.t + rhs.t) % self.n(),
            v: self.rot(self.v, rhs.t) ^ rhs.v,
        }
    }

    pub fn inv(&self) -> WreathElement {
        let t = (self.n() - self.t) % self.n();
        WreathElement {
            k: self.k,
            t,
            v: self.rot(self.v, t),
        }
    }
}

/// Canonical projection `G_k -> W_k` with kernel `Z_k`: `x -> (1, 0)`,
/// `y -> (0, e_0)`, central part to the identity.
pub fn project(g: &Element) -> WreathElement {
    let n = 1u32 << g.level();
    WreathElement {
        k: g.level() as u8,
        t: g.x_exponent() % n,
        v: g.y_bits(),
    }
}

/// Breadth-first closure of `{x, y}` under right multiplication.
/// The count must equal `2^log_order`, pinning bijectivity of the normal form.
pub fn bfs_closure(ctx: &GroupContext, log_cap: u32) -> Result<HashSet<Element>> {
    if ctx.log_order() > log_cap {
        return Err(Error::Capacity {
            log_size: ctx.log_order(),
            log_cap,
        });
    }
    let gens = [ctx.x(), ctx.y()];
    let mut seen: HashSet<Element> = HashSet::new();
    seen.insert(ctx.identity());
    let mut frontier = vec![ctx.identity()];
    while let Some(e) = frontier.pop() {
        for g in &gens {
            let n = e.mul(g).expect("one context");
            if seen.insert(n) {
                frontier.push(n);
            }
        }
    }
    Ok(seen)
}

/// One evaluated relator of the presentation.
#[derive(Debug, Clone)]
pub struct RelatorCheck {
    pub name: String,
    pub holds: bool,
}

/// Report of the full relator suite.
#[derive(Debug, Clone)]
pub struct RelatorReport {
    pub checks: Vec<RelatorCheck>,
    /// `x^(2^k)` must survive: only `x^(2^(k+1))` is a relator.
    pub x_half_order_nontrivial: bool,
}

impl RelatorReport {
    pub fn all_hold(&self) -> bool {
        self.x_half_order_nontrivial && self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluate every relator of the presentation in the normal-form engine.
pub fn relator_check(ctx: &GroupContext) -> RelatorReport {
    let k = ctx.k();
    let x = ctx.x();
    let y = ctx.y();
    let mut checks = Vec::new();
    let mut push = |name: String, e: Element| {
        checks.push(RelatorCheck {
            name,
            holds: e.is_identity(),
        });
    };
    push(format!("x^(2^{})", k + 1), x.pow(1i64 << (k + 1)));
    push("y^4".into(), y.pow(4));
    push(
        format!("[x^(2^{k}),y]"),
        x.pow(1i64 << k).comm(&y).unwrap(),
    );
    push("[y^2,x]".into(), y.pow(2).comm(&x).unwrap());
    for i in 1..=ctx.n_c() {
        let c = y.comm(&ctx.y_i(i).unwrap()).unwrap();
        push(format!("[y0,y{i}]^2"), c.pow(2));
        push(format!("[y0,y{i},x]"), c.comm(&x).unwrap());
        push(format!("[y0,y{i},y]"), c.comm(&y).unwrap());
    }
    RelatorReport {
        checks,
        x_half_order_nontrivial: !x.pow(1i64 << k).is_identity(),
    }
}

/// Result of checking the two collection formulae modulo `K(u, v)`.
#[derive(Debug, Clone)]
pub struct CollectionCheck {
    pub r: u32,
    pub eq1_holds: bool,
    pub eq2_holds: bool,
    pub k_ab_rank: u32,
    pub k_a_ab_rank: u32,
}

/// `K(u, v)`: normal closure of (i) all left-normed commutators in `{u, v}`
/// of weight at least `2^r` with weight at least 2 in `v`, and (ii) the
/// `2^(r-s+1)`-th powers of those of weight less than `2^s` (weight >= 2 in
/// `v`), for `1 <= s <= r`.
fn k_uv(ctx: &GroupContext, u: &Element, v: &Element, r: u32) -> Subgroup {
    let class_bound = (1u32 << ctx.k()) + 1;
    let max_weight = class_bound.max(1 << r);
    let mut gens: Vec<Element> = Vec::new();
    // Sequences over {u, v} indexed by bitmask: bit set = v at that slot.
    for weight in 2..=max_weight {
        for mask in 0u64..(1u64 << weight) {
            let v_weight = mask.count_ones();
            if v_weight < 2 {
                continue;
            }
            // [a, a, ...] starts trivially.
            if mask & 1 == (mask >> 1) & 1 {
                continue;
            }
            let mut c = if mask & 1 == 1 { *v } else { *u };
            for slot in 1..weight {
                let next = if (mask >> slot) & 1 == 1 { v } else { u };
                c = c.comm(next).unwrap();
                if c.is_identity() {
                    break;
                }
            }
            if c.is_identity() {
                continue;
            }
            if weight >= 1 << r {
                gens.push(c);
            }
            for s in 1..=r {
                if weight < (1 << s) {
                    gens.push(c.pow(1i64 << (r - s + 1)));
                }
            }
        }
    }
    Subgroup::normal_closure(*ctx, &gens)
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc = 1u64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Check the collection identities for `(a, b)` at exponent `2^r`:
///
/// (1) `(ab)^(2^r) = a^(2^r) b^(2^r) [b,a]^C(2^r,2) ... [b,a,..,a]  mod K(a, b)`
/// (2) `[a^(2^r), b] = [a,b]^(2^r) [a,b,a]^C(2^r,2) ... [a,b,a,..,a]  mod K(a, [a,b])`
pub fn collection_identity_check(
    ctx: &GroupContext,
    a: &Element,
    b: &Element,
    r: u32,
) -> Result<CollectionCheck> {
    if r < 1 || (1u64 << r) > (1u64 << (ctx.k() + 1)) {
        return Err(Error::Constraint(format!(
            "collection identity needs 1 <= r with 2^r <= 2^(k+1); got r = {r}"
        )));
    }
    let q = 1u64 << r;

    let k_ab = k_uv(ctx, a, b, r);
    let mut rhs1 = a.pow(q as i64).mul(&b.pow(q as i64))?;
    for j in 2..=q {
        let term = b.comm_left(a, (j - 1) as u32)?;
        rhs1 = rhs1.mul(&term.pow(binomial(q, j) as i64))?;
    }
    let lhs1 = a.mul(b)?.pow(q as i64);
    let eq1_holds = k_ab.contains(&lhs1.mul(&rhs1.inv())?);

    let ab = a.comm(b)?;
    let k_a_ab = k_uv(ctx, a, &ab, r);
    let lhs2 = a.pow(q as i64).comm(b)?;
    let mut rhs2 = ctx.identity();
    for j in 1..=q {
        let term = ab.comm_left(a, (j - 1) as u32)?;
        rhs2 = rhs2.mul(&term.pow(binomial(q, j) as i64))?;
    }
    let eq2_holds = k_a_ab.contains(&lhs2.mul(&rhs2.inv())?);

    Ok(CollectionCheck {
        r,
        eq1_holds,
        eq2_holds,
        k_ab_rank: k_ab.rank(),
        k_a_ab_rank: k_a_ab.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_element, Rng};

    fn ctx(k: u32) -> GroupContext {
        GroupContext::new(k).unwrap()
    }

    #[test]
    fn projection_is_a_homomorphism() {
        for k in 2..=4 {
            let g = ctx(k);
            let mut rng = Rng::new(2024 + k as u64);
            for _ in 0..100_000 {
                let a = random_element(&g, &mut rng);
                let b = random_element(&g, &mut rng);
                let lhs = project(&a.mul(&b).unwrap());
                let rhs = project(&a).mul(&project(&b));
                assert_eq!(lhs, rhs);
            }
            assert_eq!(project(&g.identity()), WreathElement::identity(&g));
            assert_eq!(project(&g.y_squared()), WreathElement::identity(&g));
        }
    }

    #[test]
    fn group_order_splits_as_wreath_times_kernel() {
        // |G_k| / |Z_k| = |W_k| = 2^(2^k + k).
        for k in 2..=3u32 {
            let g = ctx(k);
            let mut zk_gens = vec![g.x().pow(1i64 << k), g.y_squared()];
            for d in 1..=g.n_c() {
                zk_gens.push(g.c_d(d).unwrap());
            }
            let zk = Subgroup::normal_closure(g, &zk_gens);
            assert_eq!(g.log_order() - zk.rank(), (1 << k) + k);
        }
    }

    #[test]
    fn projection_sends_generators_correctly() {
        let g = ctx(3);
        let px = project(&g.x());
        assert_eq!((px.shift(), px.bits()), (1, 0));
        let py = project(&g.y());
        assert_eq!((py.shift(), py.bits()), (0, 1));
        // y_i = y^(x^i) lands on position i.
        for i in 0..g.n_y() {
            let p = project(&g.y_i(i).unwrap());
            assert_eq!((p.shift(), p.bits()), (0, 1u64 << i));
        }
    }

    #[test]
    fn wreath_inverses() {
        let g = ctx(3);
        let mut rng = Rng::new(5);
        for _ in 0..2000 {
            let e = project(&random_element(&g, &mut rng));
            assert!(e.mul(&e.inv()).is_identity());
            assert!(e.inv().mul(&e).is_identity());
        }
    }

    #[test]
    fn bfs_count_is_group_order_at_k2() {
        let g = ctx(2);
        let elems = bfs_closure(&g, 14).unwrap();
        assert_eq!(elems.len(), 1024);
        assert!(elems.contains(&g.w()));
    }

    #[test]
    fn bfs_respects_cap() {
        let g = ctx(3);
        assert!(matches!(
            bfs_closure(&g, 14),
            Err(Error::Capacity { log_size: 17, log_cap: 14 })
        ));
    }

    #[test]
    fn wreath_image_has_the_right_order_at_k2() {
        // |W_2| = 2^(2^k + k) = 64, and the kernel of the projection is Z_k
        // of order 16.
        let g = ctx(2);
        let elems = bfs_closure(&g, 14).unwrap();
        let image: HashSet<WreathElement> = elems.iter().map(project).collect();
        assert_eq!(image.len(), 64);
        let kernel: Vec<&Element> = elems.iter().filter(|e| project(e).is_identity()).collect();
        assert_eq!(kernel.len(), 16);
        let mut zk_gens = vec![g.x().pow(4), g.y_squared()];
        for d in 1..=g.n_c() {
            zk_gens.push(g.c_d(d).unwrap());
        }
        let zk = Subgroup::normal_closure(g, &zk_gens);
        for e in kernel {
            assert!(zk.contains(e));
        }
    }

    #[test]
    fn relator_report_is_clean() {
        for k in 2..=4 {
            let report = relator_check(&ctx(k));
            assert!(report.all_hold(), "relator failure at k={k}: {report:?}");
            assert_eq!(report.checks.len() as u32, 4 + 3 * ctx(k).n_c());
        }
    }

    #[test]
    fn collection_identity_r1_specialization() {
        // (xy)^2 = x^2 y^2 [y,x] mod K(x,y).
        let g = ctx(3);
        let check = collection_identity_check(&g, &g.x(), &g.y(), 1).unwrap();
        assert!(check.eq1_holds);
        assert!(check.eq2_holds);
    }

    #[test]
    fn collection_identity_trivial_a() {
        let g = ctx(2);
        let check = collection_identity_check(&g, &g.identity(), &g.y(), 2).unwrap();
        assert!(check.eq1_holds);
        assert!(check.eq2_holds);
    }

    #[test]
    fn collection_identity_rejects_bad_r() {
        let g = ctx(2);
        assert!(collection_identity_check(&g, &g.x(), &g.y(), 0).is_err());
        assert!(collection_identity_check(&g, &g.x(), &g.y(), 4).is_err());
    }
}
