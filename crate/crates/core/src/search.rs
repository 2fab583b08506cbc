//! Enumeration of zero-product pairs in `R[x; alpha]`.
//!
//! For a fixed `f` with first nonzero coefficient `a_s`, the coefficient of
//! `x^(s+l)` in `f g` is `a_s alpha^s(b_l)` plus terms in `b_0 .. b_(l-1)`.
//! So `g` is built one coefficient at a time: `b_l` must lie in the fibre of
//! `b -> a_s alpha^s(b)` over minus the already-known part. Fibres come from a
//! bucket index rebuilt whenever `(a_s, s)` changes. Coefficients above
//! `s + d` only involve known `b`s and are checked once `g` is complete.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::endo::AlphaPowers;
use crate::ring::{Elem, FiniteRing};
use crate::verdict::Twist;

/// Number of first coefficients handed to the thread pool at once. Fixed so
/// that budget accounting does not depend on the thread count.
const CHUNK: usize = 64;

/// Arithmetic context: the ring plus the tables of `alpha^0 .. alpha^d`.
pub(crate) struct Ctx {
    pub ring: Arc<FiniteRing>,
    pub d: usize,
    alpha: Vec<Elem>,
}

impl Ctx {
    pub fn new(ring: &Arc<FiniteRing>, powers: &AlphaPowers, d: usize) -> Ctx {
        Ctx {
            ring: ring.clone(),
            d,
            alpha: (0..=d)
                .flat_map(|k| powers.get(k).iter().copied())
                .collect(),
        }
    }

    #[inline]
    pub fn twist(&self, i: usize, b: Elem) -> Elem {
        self.alpha[i * self.ring.size() + b as usize]
    }

    /// `a_i * alpha^i(b_j)` or `a_i * b_j`.
    #[inline]
    pub fn coefficient_product(
        &self,
        twist: Twist,
        a: &[Elem],
        b: &[Elem],
        i: usize,
        j: usize,
    ) -> Elem {
        match twist {
            Twist::Plain => self.ring.mul(a[i], b[j]),
            Twist::Skew => self.ring.mul(a[i], self.twist(i, b[j])),
        }
    }

    /// First `(i, j)` whose product is outside `accept`.
    pub fn first_violation(
        &self,
        twist: Twist,
        accept: &FixedBitSet,
        f: &[Elem],
        g: &[Elem],
    ) -> Option<(usize, usize, Elem)> {
        for i in 0..f.len() {
            if f[i] == self.ring.zero() {
                continue;
            }
            for j in 0..g.len() {
                let p = self.coefficient_product(twist, f, g, i, j);
                if !accept.contains(p as usize) {
                    return Some((i, j, p));
                }
            }
        }
        None
    }
}

/// Fibres of `b -> c * alpha^s(b)`, each listed in increasing `b`.
pub(crate) struct Buckets {
    key: Option<(Elem, usize)>,
    offsets: Vec<u32>,
    items: Vec<Elem>,
}

impl Buckets {
    pub fn new(n: usize) -> Buckets {
        Buckets {
            key: None,
            offsets: vec![0; n + 1],
            items: vec![0; n],
        }
    }

    pub fn prepare(&mut self, ctx: &Ctx, c: Elem, s: usize) -> u64 {
        if self.key == Some((c, s)) {
            return 0;
        }
        let r = &*ctx.ring;
        let n = r.size();
        self.offsets.iter_mut().for_each(|o| *o = 0);
        let row = r.mul_row(c);
        for b in 0..n {
            let v = row[ctx.twist(s, b as Elem) as usize];
            self.offsets[v as usize + 1] += 1;
        }
        for v in 0..n {
            self.offsets[v + 1] += self.offsets[v];
        }
        let mut fill: Vec<u32> = self.offsets[..n].to_vec();
        for b in 0..n {
            let v = row[ctx.twist(s, b as Elem) as usize] as usize;
            self.items[fill[v] as usize] = b as Elem;
            fill[v] += 1;
        }
        self.key = Some((c, s));
        n as u64
    }

    #[inline]
    fn range(&self, value: Elem) -> (u32, u32) {
        (
            self.offsets[value as usize],
            self.offsets[value as usize + 1],
        )
    }

    #[inline]
    fn fibre(&self, value: Elem) -> &[Elem] {
        let (lo, hi) = self.range(value);
        &self.items[lo as usize..hi as usize]
    }
}

pub(crate) enum Step {
    Found,
    Done,
    Exceeded,
}

/// Depth-first walk over all `g` with `f g = 0`, for one nonzero `f`.
pub(crate) struct GWalk {
    s: usize,
    b: Vec<Elem>,
    pos: Vec<u32>,
    end: Vec<u32>,
    level: usize,
}

impl GWalk {
    pub fn new(d: usize) -> GWalk {
        GWalk {
            s: 0,
            b: vec![0; d + 1],
            pos: vec![0; d + 1],
            end: vec![0; d + 1],
            level: 0,
        }
    }

    pub fn g(&self) -> &[Elem] {
        &self.b
    }

    /// Starts a walk for `f`, which must be nonzero.
    pub fn reset(&mut self, ctx: &Ctx, buckets: &mut Buckets, f: &[Elem], work: &mut u64) {
        let z = ctx.ring.zero();
        self.s = f.iter().position(|&a| a != z).expect("f is nonzero");
        *work += buckets.prepare(ctx, f[self.s], self.s);
        let (lo, hi) = buckets.range(z);
        self.pos[0] = lo;
        self.end[0] = hi;
        self.level = 0;
    }

    pub fn next(
        &mut self,
        ctx: &Ctx,
        buckets: &Buckets,
        f: &[Elem],
        work: &mut u64,
        limit: u64,
    ) -> Step {
        let r = &*ctx.ring;
        let d = ctx.d;
        let s = self.s;
        loop {
            let l = self.level;
            if self.pos[l] < self.end[l] {
                self.b[l] = buckets.items[self.pos[l] as usize];
                self.pos[l] += 1;
                if l == d {
                    *work += 1;
                    if self.tail_vanishes(ctx, f, work) {
                        return Step::Found;
                    }
                    if *work > limit {
                        return Step::Exceeded;
                    }
                    continue;
                }
                let next = l + 1;
                let mut acc = r.zero();
                for i in s + 1..=(s + next).min(d) {
                    acc = r.add(acc, r.mul(f[i], ctx.twist(i, self.b[next - (i - s)])));
                }
                *work += (s + next).min(d).saturating_sub(s) as u64 + 1;
                let (lo, hi) = buckets.range(r.neg(acc));
                self.pos[next] = lo;
                self.end[next] = hi;
                self.level = next;
                if *work > limit {
                    return Step::Exceeded;
                }
            } else {
                if l == 0 {
                    return Step::Done;
                }
                self.level -= 1;
            }
        }
    }

    fn tail_vanishes(&self, ctx: &Ctx, f: &[Elem], work: &mut u64) -> bool {
        let r = &*ctx.ring;
        let d = ctx.d;
        for k in self.s + d + 1..=2 * d {
            let mut acc = r.zero();
            for i in k - d..=d {
                acc = r.add(acc, r.mul(f[i], ctx.twist(i, self.b[k - i])));
            }
            *work += (2 * d + 1 - k) as u64;
            if acc != r.zero() {
                return false;
            }
        }
        true
    }
}

/// Advances an odometer over element indices; `t[0]` is most significant.
fn bump(t: &mut [Elem], n: usize, from: usize) -> bool {
    for k in (from..t.len()).rev() {
        if (t[k] as usize) + 1 < n {
            t[k] += 1;
            return true;
        }
        t[k] = 0;
    }
    false
}

fn is_zero(t: &[Elem], z: Elem) -> bool {
    t.iter().all(|&x| x == z)
}

/// A violating pair `(f, g)` with the first offending `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Hit {
    pub f: Vec<Elem>,
    pub g: Vec<Elem>,
    pub i: usize,
    pub j: usize,
    pub product: Elem,
}

pub(crate) enum ScanResult {
    Found(Hit),
    Clean,
    Exceeded,
}

/// Lexicographically first violating pair, or proof that none exists.
pub(crate) fn exhaustive_scan(
    ctx: &Ctx,
    twist: Twist,
    accept: &FixedBitSet,
    cap: u64,
) -> ScanResult {
    let n = ctx.ring.size();
    let mut spent: u64 = 0;
    let firsts: Vec<usize> = (0..n).collect();
    for chunk in firsts.chunks(CHUNK) {
        let remaining = cap.saturating_sub(spent);
        let results: Vec<(u64, Option<Hit>, bool)> = chunk
            .par_iter()
            .map(|&a0| scan_first_coefficient(ctx, twist, accept, a0 as Elem, remaining))
            .collect();
        for (work, hit, exceeded) in results {
            spent += work;
            if exceeded || spent > cap {
                return ScanResult::Exceeded;
            }
            if let Some(h) = hit {
                return ScanResult::Found(h);
            }
        }
    }
    ScanResult::Clean
}

fn scan_first_coefficient(
    ctx: &Ctx,
    twist: Twist,
    accept: &FixedBitSet,
    a0: Elem,
    limit: u64,
) -> (u64, Option<Hit>, bool) {
    let n = ctx.ring.size();
    let z = ctx.ring.zero();
    let mut work = 0u64;
    let mut f = vec![0; ctx.d + 1];
    f[0] = a0;
    let mut buckets = Buckets::new(n);
    let mut walk = GWalk::new(ctx.d);
    loop {
        if !is_zero(&f, z) {
            walk.reset(ctx, &mut buckets, &f, &mut work);
            loop {
                match walk.next(ctx, &buckets, &f, &mut work, limit) {
                    Step::Found => {
                        let g = walk.g();
                        if is_zero(g, z) {
                            continue;
                        }
                        work += ((ctx.d + 1) * (ctx.d + 1)) as u64;
                        if let Some((i, j, product)) = ctx.first_violation(twist, accept, &f, g) {
                            let hit = Hit {
                                f: f.clone(),
                                g: g.to_vec(),
                                i,
                                j,
                                product,
                            };
                            return (work, Some(hit), false);
                        }
                    }
                    Step::Done => break,
                    Step::Exceeded => return (work, None, true),
                }
            }
        }
        work += 1;
        if work > limit {
            return (work, None, true);
        }
        if !bump(&mut f, n, 1) {
            return (work, None, false);
        }
    }
}

/// Sequential stream of coefficient-tuple pairs with `f g = 0`, in
/// lexicographic order of `(f, g)`.
pub(crate) struct PairStream {
    ctx: Ctx,
    f: Vec<Elem>,
    zero_g: Vec<Elem>,
    buckets: Buckets,
    walk: GWalk,
    started: bool,
    f_active: bool,
    finished: bool,
    nontrivial: bool,
    pub work: u64,
    pub cap: u64,
    pub truncated: bool,
}

impl PairStream {
    pub fn new(ctx: Ctx, cap: u64, nontrivial: bool) -> PairStream {
        let n = ctx.ring.size();
        let d = ctx.d;
        PairStream {
            f: vec![0; d + 1],
            zero_g: vec![0; d + 1],
            buckets: Buckets::new(n),
            walk: GWalk::new(d),
            ctx,
            started: false,
            f_active: false,
            finished: false,
            nontrivial,
            work: 0,
            cap,
            truncated: false,
        }
    }

    fn advance_f(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        bump(&mut self.f, self.ctx.ring.size(), 0)
    }

    /// Next pair, borrowed until the following call.
    pub fn next_pair(&mut self) -> Option<(&[Elem], &[Elem])> {
        let z = self.ctx.ring.zero();
        let n = self.ctx.ring.size();
        if self.finished {
            return None;
        }
        loop {
            if self.f_active {
                if is_zero(&self.f, z) {
                    // f = 0 annihilates every g
                    if bump(&mut self.zero_g, n, 0) {
                        self.work += 1;
                        return Some((&self.f, &self.zero_g));
                    }
                    self.f_active = false;
                } else {
                    match self.walk.next(
                        &self.ctx,
                        &self.buckets,
                        &self.f,
                        &mut self.work,
                        self.cap,
                    ) {
                        Step::Found => {
                            if self.nontrivial && is_zero(self.walk.g(), z) {
                                continue;
                            }
                            return Some((&self.f, self.walk.g()));
                        }
                        Step::Done => self.f_active = false,
                        Step::Exceeded => {
                            self.truncated = true;
                            self.finished = true;
                            return None;
                        }
                    }
                }
            }
            if !self.advance_f() {
                self.finished = true;
                return None;
            }
            self.work += 1;
            if self.work > self.cap {
                self.truncated = true;
                self.finished = true;
                return None;
            }
            if is_zero(&self.f, z) {
                if self.nontrivial {
                    continue;
                }
                self.zero_g.iter_mut().for_each(|b| *b = 0);
                self.f_active = true;
                return Some((&self.f, &self.zero_g));
            }
            self.walk
                .reset(&self.ctx, &mut self.buckets, &self.f, &mut self.work);
            self.f_active = true;
        }
    }
}

/// Seeded random falsification: `f` uniform, `g` by a random walk through
/// the fibres so that every sampled pair satisfies `f g = 0`.
pub(crate) struct RandomOutcome {
    pub hit: Option<Hit>,
    pub samples: u64,
    pub annihilating: u64,
    pub exceeded: bool,
}

pub(crate) fn random_scan(
    ctx: &Ctx,
    twist: Twist,
    accept: &FixedBitSet,
    seed: u64,
    samples: u64,
    cap: u64,
) -> RandomOutcome {
    let r = &*ctx.ring;
    let n = r.size();
    let d = ctx.d;
    let z = r.zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: HashMap<(Elem, usize), Buckets> = HashMap::new();
    let mut cached_items = 0usize;
    let mut work = 0u64;
    let mut annihilating = 0u64;
    let mut f = vec![z; d + 1];
    let mut g = vec![z; d + 1];
    for t in 0..samples {
        if work > cap {
            return RandomOutcome {
                hit: None,
                samples: t,
                annihilating,
                exceeded: true,
            };
        }
        for a in f.iter_mut() {
            *a = rng.gen_range(0..n) as Elem;
        }
        let Some(s) = f.iter().position(|&a| a != z) else {
            continue;
        };
        let key = (f[s], s);
        if !cache.contains_key(&key) {
            if cached_items > 1 << 24 {
                cache.clear();
                cached_items = 0;
            }
            let mut b = Buckets::new(n);
            work += b.prepare(ctx, f[s], s);
            cached_items += n;
            cache.insert(key, b);
        }
        let buckets = &cache[&key];
        let mut ok = true;
        for l in 0..=d {
            let mut acc = z;
            for i in s + 1..=(s + l).min(d) {
                acc = r.add(acc, r.mul(f[i], ctx.twist(i, g[l - (i - s)])));
            }
            work += 1 + l as u64;
            let fibre = buckets.fibre(r.neg(acc));
            if fibre.is_empty() {
                ok = false;
                break;
            }
            g[l] = fibre[rng.gen_range(0..fibre.len())];
        }
        if !ok {
            continue;
        }
        let mut tail_ok = true;
        for k in s + d + 1..=2 * d {
            let mut acc = z;
            for i in k - d..=d {
                acc = r.add(acc, r.mul(f[i], ctx.twist(i, g[k - i])));
            }
            if acc != z {
                tail_ok = false;
                break;
            }
        }
        if !tail_ok || is_zero(&g, z) {
            continue;
        }
        annihilating += 1;
        if let Some((i, j, product)) = ctx.first_violation(twist, accept, &f, &g) {
            return RandomOutcome {
                hit: Some(Hit {
                    f: f.clone(),
                    g: g.clone(),
                    i,
                    j,
                    product,
                }),
                samples: t + 1,
                annihilating,
                exceeded: false,
            };
        }
    }
    RandomOutcome {
        hit: None,
        samples,
        annihilating,
        exceeded: false,
    }
}

/// Searches for `f`, `g` over `R` with `f g = 0` projecting onto the given
/// quotient tuples. Lifts are tried representative-first.
pub(crate) fn lift_pair(
    ctx: &Ctx,
    fbar: &[Elem],
    gbar: &[Elem],
    reps: &[Elem],
    ideal: &[Elem],
    budget: u64,
) -> (Option<(Vec<Elem>, Vec<Elem>)>, u64) {
    let r = &*ctx.ring;
    let d = ctx.d;
    let m = ideal.len();
    let mut work = 0u64;
    let mut fi: Vec<Elem> = vec![0; d + 1];
    loop {
        let f: Vec<Elem> = (0..=d)
            .map(|k| r.add(reps[fbar[k] as usize], ideal[fi[k] as usize]))
            .collect();
        let base_g: Vec<Elem> = (0..=d).map(|k| reps[gbar[k] as usize]).collect();
        let mut g = base_g.clone();
        let mut choice = vec![0usize; d + 1];
        let mut level = 0usize;
        // depth-first over b_l = rep + ideal[choice[l]], pruning on coefficient l
        'walk: loop {
            if choice[level] >= m {
                if level == 0 {
                    break 'walk;
                }
                choice[level] = 0;
                level -= 1;
                choice[level] += 1;
                continue;
            }
            g[level] = r.add(base_g[level], ideal[choice[level]]);
            let mut acc = r.zero();
            for i in 0..=level {
                acc = r.add(acc, r.mul(f[i], ctx.twist(i, g[level - i])));
            }
            work += level as u64 + 1;
            if work > budget {
                return (None, work);
            }
            if acc != r.zero() {
                choice[level] += 1;
                continue;
            }
            if level < d {
                level += 1;
                continue;
            }
            let mut tail = true;
            for k in d + 1..=2 * d {
                let mut acc = r.zero();
                for i in k - d..=d {
                    acc = r.add(acc, r.mul(f[i], ctx.twist(i, g[k - i])));
                }
                if acc != r.zero() {
                    tail = false;
                    break;
                }
            }
            if tail {
                return (Some((f, g)), work);
            }
            choice[level] += 1;
        }
        if !bump(&mut fi, m, 0) {
            return (None, work);
        }
    }
}
