//! Seeded random draws of umbrella coefficients and family curves.
//!
//! Every draw is a pure function of `(seed, subcase, draw)`: the generator is
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `subcase * 1_000_000 + draw`,
//! so parallel sweeps reproduce bit for bit.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frame::{closed_form_reference, Subcase};
use crate::model::{CurveSpec, UmbrellaCoefficients};
use crate::series::{int, ratio, Coeff, Rational};

/// Truncation degree used for random draws.
pub const DRAW_K: usize = 6;

const MAX_ATTEMPTS: usize = 1000;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Nonzero rational with numerator in `[-6, 6]` and denominator in `[1, 4]`.
pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let n = rng.gen_range(-6i64..=6);
        if n != 0 {
            return ratio(n, rng.gen_range(1i64..=4));
        }
    }
}

/// All `a_ij` and `b_i` up to degree `k` drawn nonzero.
pub fn random_coefficients<R: Rng>(rng: &mut R, k: usize) -> UmbrellaCoefficients {
    let mut a = BTreeMap::new();
    for d in 2..=k {
        for i in 0..=d {
            a.insert((i, d - i), nonzero_rational(rng));
        }
    }
    let b = (3..=k).map(|i| (i, nonzero_rational(rng))).collect();
    UmbrellaCoefficients::new(k, a, b).expect("drawn coefficients are valid")
}

/// `c_0 + c_n x^n + c_(n+1) x^(n+1)` with nonzero coefficients.
fn random_c<R: Rng>(rng: &mut R, n: Option<usize>) -> Vec<Rational> {
    let mut c = vec![nonzero_rational(rng)];
    if let Some(n) = n {
        c.resize(n, int(0));
        c.push(nonzero_rational(rng));
        c.push(nonzero_rational(rng));
    }
    c
}

fn random_spec<R: Rng>(rng: &mut R, subcase: Subcase) -> CurveSpec {
    let mpq = |rng: &mut R, p: usize| {
        let m = rng.gen_range(2..=4);
        let q = rng.gen_range(1..m);
        let n = rng.gen_range(1..=3);
        CurveSpec::Mpq { m, p, q, c: random_c(rng, Some(n)) }
    };
    let mp = |rng: &mut R, p: usize| {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        CurveSpec::Mp { m, p, c: random_c(rng, Some(n)) }
    };
    match subcase {
        Subcase::MpqP1 => mpq(rng, 1),
        Subcase::MpqP2To3 => {
            let p = rng.gen_range(2..=3);
            mpq(rng, p)
        }
        Subcase::MpqP4Plus => {
            let p = rng.gen_range(4..=6);
            mpq(rng, p)
        }
        Subcase::MpP2NBelowM => {
            let m = rng.gen_range(2..=3);
            let n = rng.gen_range(1..m);
            CurveSpec::Mp { m, p: 2, c: random_c(rng, Some(n)) }
        }
        Subcase::MpP2NEqualM => {
            let m = rng.gen_range(1..=3);
            CurveSpec::Mp { m, p: 2, c: random_c(rng, Some(m)) }
        }
        Subcase::MpP2NAboveM => {
            let m = rng.gen_range(1..=3);
            let n = if rng.gen_bool(0.25) { None } else { Some(m + rng.gen_range(1..=2)) };
            CurveSpec::Mp { m, p: 2, c: random_c(rng, n) }
        }
        Subcase::MpP3 => mp(rng, 3),
        Subcase::MpP4 => mp(rng, 4),
        Subcase::MpP5Plus => {
            let p = rng.gen_range(5..=6);
            mp(rng, p)
        }
    }
}

/// A draw in `subcase` whose plugged closed-form tops are all nonzero.
pub fn generic_draw<R: Rng>(rng: &mut R, subcase: Subcase) -> Result<(UmbrellaCoefficients, CurveSpec)> {
    for _ in 0..MAX_ATTEMPTS {
        let coeffs = random_coefficients(rng, DRAW_K);
        let spec = random_spec(rng, subcase);
        let (found, closed) = closed_form_reference(&spec, &coeffs)?;
        debug_assert_eq!(found, subcase);
        let generic = closed.entries.iter().all(|e| match e {
            crate::series::Valuation::Leading { coeff, .. } => !Coeff::is_zero(coeff),
            crate::series::Valuation::ZeroToOrder(_) => false,
        });
        if generic {
            return Ok((coeffs, spec));
        }
    }
    Err(Error::Sampling(format!("no generic draw for {subcase} in {MAX_ATTEMPTS} attempts")))
}

/// The draw for `(seed, subcase, index)` as used by sweeps.
pub fn sweep_draw(seed: u64, subcase: Subcase, index: usize) -> Result<(UmbrellaCoefficients, CurveSpec)> {
    let mut rng = rng_for(seed, subcase.index() as u64 * 1_000_000 + index as u64);
    generic_draw(&mut rng, subcase)
}

/// A `(c(x) x^(2m), x^m)` curve with `c = c_0 + c_m x^m + c_(m+1) x^(m+1)`.
pub fn random_c2m<R: Rng>(rng: &mut R, max_m: usize) -> CurveSpec {
    let m = rng.gen_range(1..=max_m);
    CurveSpec::Mp { m, p: 2, c: random_c(rng, Some(m)) }
}

/// Any family curve from any subcase.
pub fn random_family_draw<R: Rng>(rng: &mut R) -> Result<(UmbrellaCoefficients, CurveSpec)> {
    let subcase = Subcase::ALL[rng.gen_range(0..Subcase::ALL.len())];
    generic_draw(rng, subcase)
}
