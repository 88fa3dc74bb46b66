//! Deterministic pseudo-random sampling for the property suites.

use crate::group::{Element, GroupContext};

/// SplitMix64; fixed seeds keep every suite reproducible.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Uniform over all of `G_k`: every normal form is an element.
pub fn random_element(ctx: &GroupContext, rng: &mut Rng) -> Element {
    let a = rng.below(ctx.x_mod() as u64) as i64;
    let mut g = ctx.x().pow(a);
    let e = rng.next_u64();
    for i in 0..ctx.n_y() {
        if (e >> i) & 1 == 1 {
            g = g.mul(&ctx.y_i(i).unwrap()).unwrap();
        }
    }
    if rng.next_u64() & 1 == 1 {
        g = g.mul(&ctx.y_squared()).unwrap();
    }
    let f = rng.next_u64();
    for d in 1..=ctx.n_c() {
        if (f >> (d - 1)) & 1 == 1 {
            g = g.mul(&ctx.c_d(d).unwrap()).unwrap();
        }
    }
    g
}
