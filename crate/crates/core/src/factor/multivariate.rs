//! Multivariate factorization of a square-free polynomial that is primitive
//! in a chosen main variable `x`.
//!
//! The other variables `z` are shifted to an integer point `c` where the
//! specialization stays square-free of full degree. The univariate factors
//! are lifted as monic factors in `F_P[x][[z]]` for several word-size primes
//! and recombined by CRT; every candidate is verified by exact division.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::integer::is_probable_prime;
use super::univariate::{self, Subsets, UPoly};
use crate::poly::gcd::primitive_in;
use crate::poly::zp::{Poly as ZpPoly, Zp};
use crate::poly::MPoly;

const POINTS_WANTED: usize = 3;
const POINT_ATTEMPTS: usize = 60;

type ZKey = Vec<u32>;
/// Truncated power series in `z` with `F_P[x]` coefficients.
type Series = BTreeMap<ZKey, ZpPoly>;

fn lift_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while out.len() < 64 {
            if is_probable_prime(&BigInt::from(n)) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub(crate) fn factor_squarefree(g: &MPoly, x: usize) -> Vec<MPoly> {
    let zvars: Vec<usize> = g.occurring().into_iter().filter(|&v| v != x).collect();
    debug_assert!(!zvars.is_empty());
    let Some((point, local)) = choose_point(g, x, &zvars) else {
        // No usable point found; only reachable for pathological inputs.
        return vec![g.positive()];
    };
    if local.len() == 1 {
        return vec![g.positive()];
    }
    let shifted = zvars
        .iter()
        .zip(&point)
        .fold(g.clone(), |acc, (&v, c)| acc.shift_var(v, c));
    let lifter = Lifter::new(&shifted, x, &zvars, &local);
    lifter.recombine(g, &point)
}

/// Evaluation points in the `z` variables with square-free full-degree
/// specializations; picks the one with fewest univariate factors.
fn choose_point(g: &MPoly, x: usize, zvars: &[usize]) -> Option<(Vec<BigInt>, Vec<UPoly>)> {
    let deg = g.degree(x);
    let lc = g.lc_in(x);
    let mut rng = ChaCha8Rng::seed_from_u64(0xface);
    let check = Zp::new(lift_primes()[0]);
    let mut best: Option<(Vec<BigInt>, Vec<UPoly>)> = None;
    let mut good = 0;
    for attempt in 0..POINT_ATTEMPTS {
        let radius = 1 + attempt as i64 / 4;
        let point: Vec<BigInt> = zvars
            .iter()
            .map(|_| BigInt::from(rng.gen_range(-radius..=radius)))
            .collect();
        if lc.evaluate(zvars, &point).is_zero() {
            continue;
        }
        let f0 = g.evaluate(zvars, &point);
        if f0.degree(x) != deg {
            continue;
        }
        let dense = f0.to_dense(x);
        let mut reduced: ZpPoly = dense.iter().map(|c| check.from_bigint(c)).collect();
        Zp::trim(&mut reduced);
        if reduced.len() != dense.len() || !check.is_squarefree(&reduced) {
            continue;
        }
        good += 1;
        let fs = univariate::factor_squarefree(&univariate::primitive(&dense));
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((point, fs));
        }
        if good >= POINTS_WANTED || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

fn zdeg(e: &[u32], zvars: &[usize]) -> u32 {
    zvars.iter().map(|&v| e[v]).sum()
}

struct PrimeLift {
    zp: Zp,
    factors: Vec<Series>,
}

struct Lifter<'a> {
    x: usize,
    zvars: &'a [usize],
    nvars: usize,
    truncation: u32,
    lifts: Vec<PrimeLift>,
}

impl<'a> Lifter<'a> {
    fn new(shifted: &MPoly, x: usize, zvars: &'a [usize], local: &[UPoly]) -> Self {
        let lc = shifted.lc_in(x);
        let tdeg = |p: &MPoly| p.terms.keys().map(|e| zdeg(e, zvars)).max().unwrap_or(0);
        let truncation = tdeg(&lc) + tdeg(shifted);
        let product = lc.mul(shifted);
        let degsum: u32 = (0..product.nvars).map(|v| product.degree(v)).sum();
        let bound = BigInt::from(2) * (BigInt::one() << degsum) * (product.norm2_squared().sqrt() + 1);
        let mut lifter = Lifter {
            x,
            zvars,
            nvars: shifted.nvars,
            truncation,
            lifts: Vec::new(),
        };
        let mut modulus = BigInt::one();
        for &p in lift_primes() {
            if modulus > bound {
                break;
            }
            if let Some(l) = lifter.lift_at(shifted, &lc, local, Zp::new(p)) {
                modulus *= p;
                lifter.lifts.push(l);
            }
        }
        assert!(modulus > bound, "ran out of lifting primes");
        lifter
    }

    fn key(&self, e: &[u32]) -> ZKey {
        self.zvars.iter().map(|&v| e[v]).collect()
    }

    fn series_of(&self, p: &MPoly, zp: Zp) -> Series {
        let mut s: Series = BTreeMap::new();
        for (e, c) in &p.terms {
            let entry = s.entry(self.key(e)).or_default();
            let k = e[self.x] as usize;
            if entry.len() <= k {
                entry.resize(k + 1, 0);
            }
            entry[k] = zp.from_bigint(c);
        }
        s.retain(|_, v| {
            Zp::trim(v);
            !v.is_empty()
        });
        s
    }

    fn mul(&self, zp: Zp, a: &Series, b: &Series, upto: u32) -> Series {
        let mut out: Series = BTreeMap::new();
        for (ka, pa) in a {
            let da: u32 = ka.iter().sum();
            if da > upto {
                continue;
            }
            for (kb, pb) in b {
                let db: u32 = kb.iter().sum();
                if da + db > upto {
                    continue;
                }
                let key: ZKey = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let prod = zp.poly_mul(pa, pb);
                let entry = out.entry(key).or_default();
                *entry = zp.poly_add(entry, &prod);
            }
        }
        out.retain(|_, v| !v.is_empty());
        out
    }

    fn lift_at(&self, shifted: &MPoly, lc: &MPoly, local: &[UPoly], zp: Zp) -> Option<PrimeLift> {
        let m = self.zvars.len();
        let zero_key = vec![0u32; m];
        let l = self.series_of(lc, zp);
        let l0 = l.get(&zero_key).map_or(0, |v| v[0]);
        if l0 == 0 {
            return None;
        }
        let base: Vec<ZpPoly> = local
            .iter()
            .map(|u| {
                let mut v: ZpPoly = u.iter().map(|c| zp.from_bigint(c)).collect();
                Zp::trim(&mut v);
                zp.monic(&v)
            })
            .collect();
        if base.iter().zip(local).any(|(b, u)| b.len() != u.len()) {
            return None;
        }
        let r = base.len();
        let mut sigma = Vec::with_capacity(r);
        for j in 0..r {
            let others = (0..r)
                .filter(|&i| i != j)
                .fold(vec![1u64], |acc, i| zp.poly_mul(&acc, &base[i]));
            sigma.push(zp.inverse_mod(&others, &base[j])?);
        }

        // T = F / L as a series: F · L⁻¹, L⁻¹ = l0⁻¹ Σ (1 − L/l0)^k.
        let k_max = self.truncation;
        let l0_inv = zp.inv(l0);
        let mut u: Series = l.iter().map(|(k, v)| (k.clone(), zp.poly_scale(v, l0_inv))).collect();
        u.remove(&zero_key);
        let u: Series = u.into_iter().map(|(k, v)| (k, zp.poly_sub(&[], &v))).collect();
        let mut linv: Series = BTreeMap::from([(zero_key.clone(), vec![1u64])]);
        let mut power = linv.clone();
        for _ in 0..k_max {
            power = self.mul(zp, &power, &u, k_max);
            if power.is_empty() {
                break;
            }
            for (k, v) in &power {
                let e = linv.entry(k.clone()).or_default();
                *e = zp.poly_add(e, v);
            }
        }
        let linv: Series = linv
            .into_iter()
            .map(|(k, v)| (k, zp.poly_scale(&v, l0_inv)))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let target = self.mul(zp, &self.series_of(shifted, zp), &linv, k_max);

        let mut factors: Vec<Series> = base
            .iter()
            .map(|b| BTreeMap::from([(zero_key.clone(), b.clone())]))
            .collect();
        for k in 1..=k_max {
            let prod = factors
                .iter()
                .skip(1)
                .fold(factors[0].clone(), |acc, f| self.mul(zp, &acc, f, k));
            for (key, t) in target.iter().filter(|(key, _)| key.iter().sum::<u32>() == k) {
                let e = zp.poly_sub(t, prod.get(key).map_or(&Vec::new(), |v| v));
                self.distribute(zp, &e, key, &base, &sigma, &mut factors);
            }
            for (key, pv) in prod.iter().filter(|(key, _)| key.iter().sum::<u32>() == k) {
                if !target.contains_key(key) {
                    let e = zp.poly_sub(&[], pv);
                    self.distribute(zp, &e, key, &base, &sigma, &mut factors);
                }
            }
        }
        Some(PrimeLift { zp, factors })
    }

    fn distribute(&self, zp: Zp, e: &ZpPoly, key: &ZKey, base: &[ZpPoly], sigma: &[ZpPoly], factors: &mut [Series]) {
        if e.is_empty() {
            return;
        }
        for j in 0..base.len() {
            let delta = zp.rem(&zp.poly_mul(e, &sigma[j]), &base[j]);
            if !delta.is_empty() {
                factors[j].insert(key.clone(), delta);
            }
        }
    }

    /// Candidate `L_cur · Π_S g_j` for one prime, as a map from
    /// `(z key, x degree)` to residues.
    fn candidate_at(&self, lift: &PrimeLift, lc_cur: &MPoly, subset: &[usize]) -> HashMap<(ZKey, usize), u64> {
        let zp = lift.zp;
        let mut acc = self.series_of(lc_cur, zp);
        for &i in subset {
            acc = self.mul(zp, &acc, &lift.factors[i], self.truncation);
        }
        let mut out = HashMap::new();
        for (key, poly) in acc {
            for (k, &c) in poly.iter().enumerate() {
                if c != 0 {
                    out.insert((key.clone(), k), c);
                }
            }
        }
        out
    }

    fn candidate(&self, lc_cur: &MPoly, subset: &[usize]) -> MPoly {
        let per_prime: Vec<_> = self
            .lifts
            .iter()
            .map(|l| self.candidate_at(l, lc_cur, subset))
            .collect();
        let mut keys: Vec<(ZKey, usize)> = per_prime.iter().flat_map(|m| m.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut out = MPoly::zero(self.nvars);
        for key in keys {
            let mut value = BigInt::zero();
            let mut modulus = BigInt::one();
            for (lift, residues) in self.lifts.iter().zip(&per_prime) {
                let p = BigInt::from(lift.zp.p);
                let a = BigInt::from(*residues.get(&key).unwrap_or(&0));
                let m_inv = BigInt::from(lift.zp.inv(lift.zp.from_bigint(&modulus)));
                let t = ((a - &value) * m_inv).mod_floor(&p);
                value += &modulus * t;
                modulus *= p;
            }
            if &value * 2 > modulus {
                value -= &modulus;
            }
            let mut e = vec![0u32; self.nvars];
            for (&v, &d) in self.zvars.iter().zip(&key.0) {
                e[v] = d;
            }
            e[self.x] = key.1 as u32;
            out.add_term(e, value);
        }
        out
    }

    fn recombine(&self, g: &MPoly, point: &[BigInt]) -> Vec<MPoly> {
        let r = self.lifts[0].factors.len();
        let mut remaining: Vec<usize> = (0..r).collect();
        let mut f_cur = g.clone();
        let mut out = Vec::new();
        let mut size = 1;
        let unshift = |p: &MPoly| {
            self.zvars
                .iter()
                .zip(point)
                .fold(p.clone(), |acc, (&v, c)| acc.shift_var(v, &-c))
        };
        let shift = |p: &MPoly| {
            self.zvars
                .iter()
                .zip(point)
                .fold(p.clone(), |acc, (&v, c)| acc.shift_var(v, c))
        };
        while 2 * size <= remaining.len() {
            let lc_cur = shift(&f_cur.lc_in(self.x));
            let mut found = None;
            for idx in Subsets::new(remaining.len(), size) {
                let subset: Vec<usize> = idx.iter().map(|&i| remaining[i]).collect();
                let cand = self.candidate(&lc_cur, &subset);
                if cand.is_zero() {
                    continue;
                }
                let cand = primitive_in(&unshift(&cand), self.x);
                if cand.degree(self.x) == 0 {
                    continue;
                }
                if let Some(q) = f_cur.div_exact(&cand) {
                    found = Some((idx, cand, q));
                    break;
                }
            }
            match found {
                Some((idx, cand, q)) => {
                    out.push(cand);
                    f_cur = q;
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                }
                None => size += 1,
            }
        }
        if f_cur.degree(self.x) > 0 {
            out.push(f_cur.primitive());
        }
        out
    }
}
