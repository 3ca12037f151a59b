//! Arbitrary-precision evaluation of exact scalars.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclo::CycloScalar;
use super::float::FloatComplex;
use super::rad::RadScalar;
use crate::error::{Error, Result};

const GUARD_BITS: usize = 64;
const RM: RoundingMode = RoundingMode::ToEven;

/// Complex value at a chosen binary precision.
#[derive(Clone, Debug)]
pub struct PreciseComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| Error::UnsupportedScalar(format!("float constants: {e:?}")))
}

fn big_int(n: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc)
}

fn big_rational(q: &BigRational, p: usize, cc: &mut Consts) -> BigFloat {
    big_int(q.numer(), p, cc).div(&big_int(q.denom(), p, cc), p, RM)
}

fn cyclo_parts(c: &CycloScalar, p: usize, cc: &mut Consts) -> (BigFloat, BigFloat) {
    let mut re = BigFloat::from_u8(0, p);
    let mut im = BigFloat::from_u8(0, p);
    let two_pi = cc.pi(p, RM).mul(&BigFloat::from_u8(2, p), p, RM);
    let order = BigFloat::from_u32(c.order(), p);
    for (j, q) in c.coeffs().iter().enumerate() {
        let coeff = big_rational(q, p, cc);
        if j == 0 {
            re = re.add(&coeff, p, RM);
            continue;
        }
        let angle = two_pi
            .mul(&BigFloat::from_u64(j as u64, p), p, RM)
            .div(&order, p, RM);
        re = re.add(&coeff.mul(&angle.cos(p, RM, cc), p, RM), p, RM);
        im = im.add(&coeff.mul(&angle.sin(p, RM, cc), p, RM), p, RM);
    }
    (re, im)
}

/// Evaluates `x` with error below `2^{-prec+4}`.
pub fn to_precise(x: &RadScalar, prec: usize) -> Result<PreciseComplex> {
    if prec < 53 {
        return Err(Error::InvalidParameter(format!("precision {prec} below 53 bits")));
    }
    let p = prec + GUARD_BITS;
    let mut cc = consts()?;
    let mut re = BigFloat::from_u8(0, p);
    let mut im = BigFloat::from_u8(0, p);
    for (r, c) in x.terms() {
        let (cr, ci) = cyclo_parts(c, p, &mut cc);
        let root = BigFloat::from_u64(*r, p).sqrt(p, RM);
        re = re.add(&cr.mul(&root, p, RM), p, RM);
        im = im.add(&ci.mul(&root, p, RM), p, RM);
    }
    re.set_precision(prec, RM)
        .map_err(|e| Error::UnsupportedScalar(format!("{e:?}")))?;
    im.set_precision(prec, RM)
        .map_err(|e| Error::UnsupportedScalar(format!("{e:?}")))?;
    Ok(PreciseComplex { re, im, prec })
}

impl PreciseComplex {
    fn format_part(x: &BigFloat) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut cc = Consts::new().expect("float constants");
        x.format(Radix::Dec, RM, &mut cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }

    pub fn re_string(&self) -> String {
        Self::format_part(&self.re)
    }

    pub fn im_string(&self) -> String {
        Self::format_part(&self.im)
    }

    pub fn parse(re: &str, im: &str, prec: usize) -> Result<Self> {
        let mut cc = consts()?;
        let parse = |s: &str, cc: &mut Consts| -> Result<BigFloat> {
            let v = BigFloat::parse(s, Radix::Dec, prec, RM, cc);
            if v.is_nan() {
                Err(Error::Parse(format!("invalid float literal {s:?}")))
            } else {
                Ok(v)
            }
        };
        Ok(PreciseComplex {
            re: parse(re, &mut cc)?,
            im: parse(im, &mut cc)?,
            prec,
        })
    }

    pub fn to_float(&self) -> FloatComplex {
        let re = self.re_string().parse::<f64>().unwrap_or(f64::NAN);
        let im = self.im_string().parse::<f64>().unwrap_or(f64::NAN);
        FloatComplex::new(re, im)
    }

    /// `max(|Δre|, |Δim|) ≤ 2^{-bits}`.
    pub fn within(&self, other: &PreciseComplex, bits: i32) -> bool {
        let p = self.prec.max(other.prec) + GUARD_BITS;
        let bound = BigFloat::from_f64(2f64.powi(-bits), p);
        let dre = self.re.sub(&other.re, p, RM).abs();
        let dim = self.im.sub(&other.im, p, RM).abs();
        dre <= bound && dim <= bound
    }
}
