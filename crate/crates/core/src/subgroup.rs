//! Subgroup arithmetic via echelonized induced bases over GF(2).
//!
//! A subgroup is stored as a list of basis elements with strictly increasing
//! coordinate depths.  Because collection corrections only flow into deeper
//! coordinates, sifting an element through such a basis decides membership,
//! and every element of the subgroup is a unique product of basis elements
//! taken in depth order.  Closure runs the pairwise-product/square fixpoint,
//! which the triangular coordinate structure makes sufficient.

use crate::error::{Error, Result};
use crate::group::{Element, GroupContext};

#[derive(Debug, Clone)]
pub struct Subgroup {
    ctx: GroupContext,
    basis: Vec<Element>,
}

impl Subgroup {
    /// The trivial subgroup.
    pub fn trivial(ctx: GroupContext) -> Self {
        Subgroup { ctx, basis: Vec::new() }
    }

    /// The whole group, from its canonical one-coordinate basis.
    pub fn full_group(ctx: GroupContext) -> Self {
        let mut basis = Vec::with_capacity(ctx.log_order() as usize);
        for t in 0..=ctx.k() {
            basis.push(ctx.x().pow(1i64 << t));
        }
        for i in 0..ctx.n_y() {
            basis.push(ctx.y_i(i).unwrap());
        }
        basis.push(ctx.y_squared());
        for d in 1..=ctx.n_c() {
            basis.push(ctx.c_d(d).unwrap());
        }
        Subgroup { ctx, basis }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn rank(&self) -> u32 {
        self.basis.len() as u32
    }

    /// `log_2` of the subgroup order.
    pub fn log_order(&self) -> u32 {
        self.rank()
    }

    /// `log_2 |G_k : self|`.
    pub fn log_index(&self) -> u32 {
        self.ctx.log_order() - self.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full_group(&self) -> bool {
        self.rank() == self.ctx.log_order()
    }

    /// Residue of `g` after elimination against the basis; the identity
    /// exactly when `g` is a member.
    pub fn sift(&self, g: &Element) -> Element {
        let mut r = *g;
        for b in &self.basis {
            if r.is_identity() {
                break;
            }
            if r.depth() == b.depth() {
                r = r.mul(b).expect("basis and residue share a context");
            }
        }
        r
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.sift(g).is_identity()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn equals(&self, other: &Subgroup) -> bool {
        self.rank() == other.rank() && self.contains_subgroup(other)
    }

    /// Insert `g`, keeping the echelon invariant; true if the basis grew.
    fn insert(&mut self, g: &Element) -> bool {
        let r = self.sift(g);
        if r.is_identity() {
            return false;
        }
        let pos = self.basis.partition_point(|b| b.depth() < r.depth());
        self.basis.insert(pos, r);
        true
    }

    /// Smallest subgroup containing `gens`: sift-insert, then re-sift all
    /// pairwise products (squares included) to a fixpoint.
    pub fn closure(ctx: GroupContext, gens: &[Element]) -> Subgroup {
        let mut s = Subgroup::trivial(ctx);
        for g in gens {
            s.insert(g);
        }
        s.pairwise_fixpoint(false);
        s
    }

    /// Smallest normal subgroup of `G_k` containing `gens`: the closure
    /// fixpoint additionally sifts conjugates of basis elements by the group
    /// generators `x` and `y`.
    pub fn normal_closure(ctx: GroupContext, gens: &[Element]) -> Subgroup {
        let mut s = Subgroup::trivial(ctx);
        for g in gens {
            s.insert(g);
        }
        s.pairwise_fixpoint(true);
        s
    }

    fn pairwise_fixpoint(&mut self, close_conjugation: bool) {
        let x = self.ctx.x();
        let y = self.ctx.y();
        loop {
            let snapshot = self.basis.clone();
            let mut changed = false;
            for u in &snapshot {
                for v in &snapshot {
                    let p = u.mul(v).expect("one context");
                    changed |= self.insert(&p);
                }
                if close_conjugation {
                    changed |= self.insert(&u.conj(&x).unwrap());
                    changed |= self.insert(&u.conj(&y).unwrap());
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Stable under conjugation by the group generators.
    pub fn is_normal(&self) -> bool {
        let x = self.ctx.x();
        let y = self.ctx.y();
        self.basis
            .iter()
            .all(|b| self.contains(&b.conj(&x).unwrap()) && self.contains(&b.conj(&y).unwrap()))
    }

    /// All basis elements commute pairwise and square to the identity.
    pub fn is_elementary_abelian(&self) -> bool {
        self.basis.iter().all(|b| b.pow(2).is_identity())
            && self
                .basis
                .iter()
                .all(|b| self.basis.iter().all(|c| b.comm(c).unwrap().is_identity()))
    }

    /// Visit every element (all `2^rank` products of basis elements in depth
    /// order).  Prefix products keep this at two multiplications per element.
    pub fn for_each_element<F: FnMut(&Element)>(&self, f: &mut F) {
        fn rec<F: FnMut(&Element)>(basis: &[Element], prefix: Element, f: &mut F) {
            match basis.split_first() {
                None => f(&prefix),
                Some((b, rest)) => {
                    rec(rest, prefix, f);
                    rec(rest, prefix.mul(b).expect("one context"), f);
                }
            }
        }
        rec(&self.basis, self.ctx.identity(), f);
    }

    fn check_cap(&self, log_cap: u32) -> Result<()> {
        if self.rank() > log_cap {
            return Err(Error::Capacity {
                log_size: self.rank(),
                log_cap,
            });
        }
        Ok(())
    }

    /// All elements as a vector; fails above the cap.
    pub fn elements(&self, log_cap: u32) -> Result<Vec<Element>> {
        self.check_cap(log_cap)?;
        let mut out = Vec::with_capacity(1usize << self.rank());
        self.for_each_element(&mut |e| out.push(*e));
        Ok(out)
    }

    /// `self^q` = closure of the q-th powers of all elements, by exhaustive
    /// enumeration; `q` a power of 2.
    pub fn power_subgroup(&self, q: u64, log_cap: u32) -> Result<Subgroup> {
        assert!(q.is_power_of_two(), "power_subgroup wants a power of 2");
        self.check_cap(log_cap)?;
        let mut s = Subgroup::trivial(self.ctx);
        self.for_each_element(&mut |e| {
            s.insert(&e.pow(q as i64));
        });
        s.pairwise_fixpoint(false);
        Ok(s)
    }

    /// Join `<self, other>`; equals the product set when one side is normal,
    /// which holds for every series use in this crate.
    pub fn product(&self, other: &Subgroup) -> Subgroup {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b);
        }
        s.pairwise_fixpoint(false);
        s
    }

    /// `[self, other]` for normal operands: the normal closure of the
    /// pairwise basis commutators.
    pub fn commutator(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.is_normal() || !other.is_normal() {
            return Err(Error::NotNormal);
        }
        let mut gens = Vec::new();
        for a in &self.basis {
            for b in &other.basis {
                gens.push(a.comm(b).expect("one context"));
            }
        }
        Ok(Subgroup::normal_closure(self.ctx, &gens))
    }

    /// Exact intersection: enumerate the smaller operand and keep the members
    /// of the other.  Every use in this crate intersects against a small
    /// central subgroup, so the enumeration stays tiny.
    pub fn intersection(&self, other: &Subgroup, log_cap: u32) -> Result<Subgroup> {
        let (small, big) = if self.rank() <= other.rank() {
            (self, other)
        } else {
            (other, self)
        };
        small.check_cap(log_cap)?;
        let mut s = Subgroup::trivial(self.ctx);
        small.for_each_element(&mut |e| {
            if big.contains(e) {
                s.insert(e);
            }
        });
        // The member set is already a group; the fixpoint is a no-op pass.
        s.pairwise_fixpoint(false);
        Ok(s)
    }

    /// Largest power of 2 dividing the order of every element, found by
    /// exhaustive enumeration.
    pub fn exponent(&self, log_cap: u32) -> Result<u64> {
        self.check_cap(log_cap)?;
        let mut exp = 1u64;
        self.for_each_element(&mut |e| exp = exp.max(e.order()));
        Ok(exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_element, Rng};
    use std::collections::HashSet;

    fn ctx(k: u32) -> GroupContext {
        GroupContext::new(k).unwrap()
    }

    #[test]
    fn trivial_and_full() {
        let g = ctx(2);
        assert_eq!(Subgroup::trivial(g).rank(), 0);
        let full = Subgroup::full_group(g);
        assert_eq!(full.rank(), 10);
        assert!(full.is_normal());
        // The canonical basis has strictly increasing depths.
        for w in full.basis().windows(2) {
            assert!(w[0].depth() < w[1].depth());
        }
    }

    #[test]
    fn closure_of_generators_is_whole_group() {
        for k in 2..=3 {
            let g = ctx(k);
            let s = Subgroup::closure(g, &[g.x(), g.y()]);
            assert_eq!(s.rank(), g.log_order());
            assert!(s.equals(&Subgroup::full_group(g)));
        }
    }

    #[test]
    fn empty_closure_is_trivial() {
        let g = ctx(2);
        let s = Subgroup::closure(g, &[]);
        assert!(s.is_trivial());
        assert_eq!(s.log_order(), 0);
    }

    #[test]
    fn sift_examples() {
        let g = ctx(2);
        let s = Subgroup::closure(g, &[g.x().pow(4), g.w(), g.w().comm(&g.x()).unwrap()]);
        assert!(s.sift(&g.identity()).is_identity());
        for b in s.basis() {
            assert!(s.sift(b).is_identity());
        }
        assert!(s.contains(&g.w()));
        assert_eq!(s.rank(), 3);
        assert!(s.is_elementary_abelian());
        assert!(!s.contains(&g.x()));
    }

    #[test]
    fn membership_random_products_and_nonmembers() {
        let g = ctx(3);
        let z3 = g.z_word(3).unwrap();
        let s = Subgroup::normal_closure(g, &[g.x().pow(4), z3]);
        let mut rng = Rng::new(42);
        for _ in 0..2000 {
            // Random member: product of random basis elements.
            let mut m = g.identity();
            for b in s.basis() {
                if rng.next_u64() & 1 == 1 {
                    m = m.mul(b).unwrap();
                }
            }
            assert!(s.contains(&m));
            let r = random_element(&g, &mut rng);
            assert_eq!(s.contains(&r), s.sift(&r).is_identity());
            if !s.sift(&r).is_identity() {
                assert!(!s.contains(&r));
            }
        }
    }

    #[test]
    fn closure_order_matches_bfs_enumeration() {
        // Cross-check 2^rank against a brute-force closure count.
        let g = ctx(2);
        let cases: Vec<Vec<Element>> = vec![
            vec![g.x()],
            vec![g.y()],
            vec![g.x().pow(2), g.y()],
            vec![g.w(), g.x().pow(4)],
            vec![g.x().mul(&g.y()).unwrap()],
            vec![g.y(), g.y_i(1).unwrap()],
        ];
        for gens in cases {
            let s = Subgroup::closure(g, &gens);
            let mut seen: HashSet<Element> = HashSet::new();
            seen.insert(g.identity());
            let mut frontier = vec![g.identity()];
            while let Some(e) = frontier.pop() {
                for gen in &gens {
                    let n = e.mul(gen).unwrap();
                    if seen.insert(n) {
                        frontier.push(n);
                    }
                }
            }
            assert_eq!(1usize << s.rank(), seen.len());
            for e in &seen {
                assert!(s.contains(e));
            }
        }
    }

    #[test]
    fn cyclic_closure_of_x() {
        for k in 2..=4 {
            let g = ctx(k);
            let s = Subgroup::closure(g, &[g.x()]);
            assert_eq!(1u64 << s.rank(), 1u64 << (k + 1));
        }
    }

    #[test]
    fn normal_closure_of_central_element() {
        let g = ctx(3);
        let s = Subgroup::normal_closure(g, &[g.y_squared()]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn normal_closure_z_generators() {
        // <x^(2^k), y^2, [y0,yi]>^G = Z_k of order 2^(2^(k-1) + 2).
        for k in 2..=3 {
            let g = ctx(k);
            let mut gens = vec![g.x().pow(1i64 << k), g.y_squared()];
            for d in 1..=g.n_c() {
                gens.push(g.c_d(d).unwrap());
            }
            let s = Subgroup::normal_closure(g, &gens);
            assert_eq!(s.rank(), g.n_c() + 2);
            assert!(s.is_elementary_abelian());
        }
    }

    #[test]
    fn power_subgroup_examples() {
        let g = ctx(2);
        let trivial = Subgroup::trivial(g);
        assert!(trivial.power_subgroup(2, 22).unwrap().is_trivial());

        let full = Subgroup::full_group(g);
        let p = full.power_subgroup(4, 22).unwrap();
        let structural = Subgroup::closure(
            g,
            &[g.x().pow(4), g.w(), g.w().comm(&g.x()).unwrap()],
        );
        assert!(p.equals(&structural));
        assert_eq!(p.rank(), 3);
    }

    #[test]
    fn power_subgroup_respects_cap() {
        let g = ctx(3);
        let full = Subgroup::full_group(g);
        match full.power_subgroup(2, 10) {
            Err(Error::Capacity { log_size, log_cap }) => {
                assert_eq!(log_size, 17);
                assert_eq!(log_cap, 10);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn product_identities() {
        let g = ctx(2);
        let full = Subgroup::full_group(g);
        let z = Subgroup::normal_closure(g, &[g.y_squared()]);
        assert!(full.product(&full).equals(&full));
        assert!(z.product(&Subgroup::trivial(g)).equals(&z));
        assert!(z.product(&full).equals(&full));
    }

    #[test]
    fn commutator_subgroup_basics() {
        let g = ctx(2);
        let full = Subgroup::full_group(g);
        let trivial = Subgroup::trivial(g);
        assert!(full.commutator(&trivial).unwrap().is_trivial());

        let gamma2 = full.commutator(&full).unwrap();
        // G/gamma_2 = C_(2^(k+1)) x C_4, so rank drops by k + 3.
        assert_eq!(gamma2.rank(), g.log_order() - (g.k() + 3));
        assert_eq!(gamma2.exponent(22).unwrap(), 4);
    }

    #[test]
    fn commutator_rejects_non_normal() {
        let g = ctx(2);
        let not_normal = Subgroup::closure(g, &[g.y()]);
        assert!(!not_normal.is_normal());
        let full = Subgroup::full_group(g);
        assert!(matches!(
            full.commutator(&not_normal),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn intersection_is_exact() {
        let g = ctx(2);
        let full = Subgroup::full_group(g);
        let z = {
            let mut gens = vec![g.y_squared()];
            for d in 1..=g.n_c() {
                gens.push(g.c_d(d).unwrap());
            }
            Subgroup::normal_closure(g, &gens)
        };
        let i = full.intersection(&z, 22).unwrap();
        assert!(i.equals(&z));

        // Brute-force cross-check on two small subgroups.
        let a = Subgroup::closure(g, &[g.x().pow(2), g.y_squared()]);
        let b = Subgroup::closure(g, &[g.x().pow(4), g.c_d(1).unwrap()]);
        let i = a.intersection(&b, 22).unwrap();
        let expected: Vec<Element> = a
            .elements(22)
            .unwrap()
            .into_iter()
            .filter(|e| b.contains(e))
            .collect();
        assert_eq!(1usize << i.rank(), expected.len());
        for e in expected {
            assert!(i.contains(&e));
        }
    }

    #[test]
    fn enumeration_counts_match_rank() {
        let g = ctx(2);
        let s = Subgroup::closure(g, &[g.x().pow(2), g.y()]);
        let elems = s.elements(22).unwrap();
        assert_eq!(elems.len(), 1usize << s.rank());
        let distinct: HashSet<Element> = elems.into_iter().collect();
        assert_eq!(distinct.len(), 1usize << s.rank());
    }
}
