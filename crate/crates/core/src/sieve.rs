//! Arithmetic feasibility sieve for parameter tuples
//! `(lambda, v, k, r, b, c, d, ell)` of imprimitive 2-designs.
//!
//! All arithmetic is exact. `r` and `b` are stored as rationals so a
//! candidate with a fractional block count can be represented and then
//! rejected with a witness.

use std::fmt;

use num_integer::gcd;
use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParameterTuple {
    pub lambda: u64,
    pub v: u64,
    pub k: u64,
    pub r: Rational,
    pub b: Rational,
    pub c: u64,
    pub d: u64,
    pub ell: u64,
}

fn show(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl ParameterTuple {
    /// A tuple with integral `r` and `b`.
    pub fn new(lambda: u64, v: u64, k: u64, r: u64, b: u64, c: u64, d: u64, ell: u64) -> Self {
        ParameterTuple {
            lambda,
            v,
            k,
            r: Rational::from_integer(r),
            b: Rational::from_integer(b),
            c,
            d,
            ell,
        }
    }

    /// Integral replication number, if it is one.
    pub fn r_int(&self) -> Option<u64> {
        self.r.is_integer().then(|| self.r.to_integer())
    }

    /// Integral block count, if it is one.
    pub fn b_int(&self) -> Option<u64> {
        self.b.is_integer().then(|| self.b.to_integer())
    }

    /// `k - 1 - d(ell - 1)`, which may be negative.
    pub fn sieve_x(&self) -> i128 {
        self.k as i128 - 1 - self.d as i128 * (self.ell as i128 - 1)
    }

    pub fn csv_header() -> &'static str {
        "lambda,v,k,r,b,c,d,ell"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.lambda,
            self.v,
            self.k,
            show(&self.r),
            show(&self.b),
            self.c,
            self.d,
            self.ell
        )
    }

    pub fn from_csv(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Parse(format!("expected 8 fields, found {}", fields.len())));
        }
        let int = |s: &str| -> Result<u64> {
            s.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        };
        let rat = |s: &str| -> Result<Rational> {
            match s.split_once('/') {
                Some((n, d)) => {
                    let d = int(d)?;
                    if d == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Rational::new(int(n)?, d))
                }
                None => Ok(Rational::from_integer(int(s)?)),
            }
        };
        Ok(ParameterTuple {
            lambda: int(fields[0])?,
            v: int(fields[1])?,
            k: int(fields[2])?,
            r: rat(fields[3])?,
            b: rat(fields[4])?,
            c: int(fields[5])?,
            d: int(fields[6])?,
            ell: int(fields[7])?,
        })
    }

    fn sort_key(&self) -> (u64, u64, u64, u64) {
        (self.lambda, self.v, self.k, self.c)
    }
}

impl fmt::Display for ParameterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(lambda={}, v={}, k={}, r={}, b={}, c={}, d={}, ell={})",
            self.lambda,
            self.v,
            self.k,
            show(&self.r),
            show(&self.b),
            self.c,
            self.d,
            self.ell
        )
    }
}

/// Parse a tuple CSV with the standard header. Blank lines are ignored.
pub fn parse_csv(text: &str) -> Result<Vec<ParameterTuple>> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != ParameterTuple::csv_header() {
                return Err(Error::ParseLine {
                    line: i + 1,
                    msg: format!("expected header {:?}", ParameterTuple::csv_header()),
                });
            }
            header_seen = true;
            continue;
        }
        out.push(ParameterTuple::from_csv(line).map_err(|e| Error::ParseLine {
            line: i + 1,
            msg: e.to_string(),
        })?);
    }
    Ok(out)
}

pub fn to_csv(tuples: &[ParameterTuple]) -> String {
    let mut s = String::from(ParameterTuple::csv_header());
    s.push('\n');
    for t in tuples {
        s.push_str(&t.to_csv());
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintVerdict {
    pub rule_id: &'static str,
    pub passed: bool,
    pub witness: String,
}

impl ConstraintVerdict {
    fn new(rule_id: &'static str, passed: bool, witness: String) -> Self {
        ConstraintVerdict {
            rule_id,
            passed,
            witness,
        }
    }

    /// `rule_id,pass|fail,witness`
    pub fn to_line(&self) -> String {
        format!(
            "{},{},{}",
            self.rule_id,
            if self.passed { "pass" } else { "fail" },
            self.witness
        )
    }
}

fn cmp_word(ok: bool, holds: &'static str, fails: &'static str) -> &'static str {
    if ok {
        holds
    } else {
        fails
    }
}

/// Dembowski's conditions and the strengthened fourth inequality.
pub fn dembowski_ok(lambda: u64, r: u64, k: u64, v: u64) -> Vec<ConstraintVerdict> {
    let g = gcd(lambda, r);
    let mut out = Vec::with_capacity(6);
    out.push(ConstraintVerdict::new(
        "DEM1",
        g >= 2,
        format!("(lambda r)=({lambda} {r})={g} {} 2", cmp_word(g >= 2, ">=", "<")),
    ));
    let rhs = g as u128 * (g as u128).saturating_sub(1);
    let ok = lambda as u128 <= rhs;
    out.push(ConstraintVerdict::new(
        "DEM2",
        ok,
        format!(
            "lambda={lambda} {} (lambda r)((lambda r)-1)={g}*{}={rhs}",
            cmp_word(ok, "<=", ">"),
            g.saturating_sub(1)
        ),
    ));
    let diff = r.abs_diff(lambda);
    let g3 = gcd(diff, k);
    out.push(ConstraintVerdict::new(
        "DEM3",
        g3 >= 2,
        format!("(r-lambda k)=({diff} {k})={g3} {} 2", cmp_word(g3 >= 2, ">=", "<")),
    ));
    let km3 = k as i128 - 3;
    let rhs4 = lambda as i128 * km3;
    let ok = (r as i128) <= rhs4;
    out.push(ConstraintVerdict::new(
        "DEM4",
        ok,
        format!("r={r} {} lambda(k-3)={lambda}*{km3}={rhs4}", cmp_word(ok, "<=", ">")),
    ));
    let g5 = gcd(v.saturating_sub(1), k.saturating_sub(1));
    out.push(ConstraintVerdict::new(
        "DEM5",
        g5 >= 3,
        format!(
            "(v-1 k-1)=({} {})={g5} {} 3",
            v.saturating_sub(1),
            k.saturating_sub(1),
            cmp_word(g5 >= 3, ">=", "<")
        ),
    ));
    let rhs6 = g as i128 * km3;
    let ok = (r as i128) <= rhs6;
    out.push(ConstraintVerdict::new(
        "ZZ",
        ok,
        format!("r={r} {} (r lambda)(k-3)={g}*{km3}={rhs6}", cmp_word(ok, "<=", ">")),
    ));
    out
}

/// Dembowski checks on a tuple; when `r` is fractional every condition
/// involving `r` fails with that as the witness.
pub fn dembowski_for(t: &ParameterTuple) -> Vec<ConstraintVerdict> {
    match t.r_int() {
        Some(r) => dembowski_ok(t.lambda, r, t.k, t.v),
        None => {
            let mut out = dembowski_ok(t.lambda, 1, t.k, t.v);
            for verdict in &mut out {
                if verdict.rule_id != "DEM5" {
                    verdict.passed = false;
                    verdict.witness = format!("r={} is not an integer", show(&t.r));
                }
            }
            out
        }
    }
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(n)
}

/// The six basic divisibility and counting conditions on imprimitive
/// flag-transitive designs.
pub fn lemma21_ok(t: &ParameterTuple) -> Vec<ConstraintVerdict> {
    let (lambda, v, k, c, d, ell) = (t.lambda, t.v, t.k, t.c, t.d, t.ell);
    let mut out = Vec::with_capacity(6);

    let bk = t.b * rat(k);
    let vr = t.r * rat(v);
    let lhs2 = t.r * rat(k.saturating_sub(1));
    let rhs2 = rat(lambda) * rat(v.saturating_sub(1));
    let ok = bk == vr && lhs2 == rhs2;
    out.push(ConstraintVerdict::new(
        "L2_1_i",
        ok,
        format!(
            "bk={} {} vr={}; r(k-1)={} {} lambda(v-1)={}",
            show(&bk),
            cmp_word(bk == vr, "=", "!="),
            show(&vr),
            show(&lhs2),
            cmp_word(lhs2 == rhs2, "=", "!="),
            show(&rhs2)
        ),
    ));

    let divides = ell != 0 && k % ell == 0;
    let ok = divides && 1 < ell && ell < k;
    out.push(ConstraintVerdict::new(
        "L2_1_ii",
        ok,
        format!(
            "ell={ell} {} k={k}; 1 < ell < k {}",
            cmp_word(divides, "divides", "does not divide"),
            cmp_word(1 < ell && ell < k, "holds", "fails")
        ),
    ));

    let l2 = ell as u128 * ell as u128;
    let c2l = c as u128 * c as u128 * lambda as u128;
    let ok = l2 != 0 && c2l % l2 == 0;
    out.push(ConstraintVerdict::new(
        "L2_1_iii",
        ok,
        format!(
            "ell^2={l2} {} c^2*lambda={c2l}",
            cmp_word(ok, "divides", "does not divide")
        ),
    ));

    let x = t.sieve_x();
    let xl = x * (ell as i128 - 1);
    let ok = x >= 1 && ell as i128 - 1 <= xl && xl <= lambda as i128 - 1;
    out.push(ConstraintVerdict::new(
        "L2_1_iv",
        ok,
        format!(
            "x=k-1-d(ell-1)={x}; ell-1={} <= x(ell-1)={xl} <= lambda-1={} {}",
            ell as i128 - 1,
            lambda as i128 - 1,
            cmp_word(ok, "holds", "fails")
        ),
    ));

    let lhs = rat(lambda) * rat(c.saturating_sub(1));
    let rhs = t.r * rat(ell.saturating_sub(1));
    out.push(ConstraintVerdict::new(
        "L2_1_v",
        lhs == rhs,
        format!(
            "lambda(c-1)={} {} r(ell-1)={}",
            show(&lhs),
            cmp_word(lhs == rhs, "=", "!="),
            show(&rhs)
        ),
    ));

    let e = ell as u128 - 1;
    let prod = lambda as u128 * ell as u128 * e * e * d as u128 * (d as u128).saturating_sub(1);
    let ok = k != 0 && prod % k as u128 == 0;
    out.push(ConstraintVerdict::new(
        "L2_1_vi",
        ok,
        format!(
            "k={k} {} lambda*ell*(ell-1)^2*d(d-1)={prod}",
            cmp_word(ok, "divides", "does not divide")
        ),
    ));
    out
}

/// Every verdict for a tuple: Dembowski, lemma parts, the cubic bound on
/// `k`, and integrality of `b` and `r`.
pub fn all_verdicts(t: &ParameterTuple) -> Vec<ConstraintVerdict> {
    let mut out = dembowski_for(t);
    out.extend(lemma21_ok(t));
    let bound = 2 * t.lambda as u128 * t.lambda as u128 * (t.lambda as u128).saturating_sub(1);
    let ok = t.k as u128 <= bound;
    out.push(ConstraintVerdict::new(
        "DPK",
        ok,
        format!(
            "k={} {} 2*lambda^2*(lambda-1)={bound}",
            t.k,
            cmp_word(ok, "<=", ">")
        ),
    ));
    out.push(ConstraintVerdict::new(
        "INT_B",
        t.b.is_integer(),
        format!(
            "b=vr/k={} {}",
            show(&t.b),
            cmp_word(t.b.is_integer(), "is an integer", "is not an integer")
        ),
    ));
    out.push(ConstraintVerdict::new(
        "INT_R",
        t.r.is_integer(),
        format!(
            "r=lambda(c-1)/(ell-1)={} {}",
            show(&t.r),
            cmp_word(t.r.is_integer(), "is an integer", "is not an integer")
        ),
    ));
    out
}

pub fn failed_rules(t: &ParameterTuple) -> Vec<&'static str> {
    all_verdicts(t)
        .into_iter()
        .filter(|v| !v.passed)
        .map(|v| v.rule_id)
        .collect()
}

pub fn passes_all(t: &ParameterTuple) -> bool {
    all_verdicts(t).iter().all(|v| v.passed)
}

fn check_ranges(lambda_min: u64, lambda_max: u64, v_min: u64, v_max: u64) -> Result<()> {
    if lambda_min < 2 {
        return Err(Error::Range(format!("lambda_min={lambda_min} must be at least 2")));
    }
    if lambda_min > lambda_max {
        return Err(Error::Range(format!(
            "lambda range {lambda_min}:{lambda_max} is empty"
        )));
    }
    if v_min < 1 || v_min > v_max {
        return Err(Error::Range(format!("v range {v_min}:{v_max} is empty")));
    }
    Ok(())
}

/// Every tuple produced by the `(lambda, k, ell, x)` parametrization with
/// `v` in range, before any filtering except the structural ones
/// (`c, d >= 2`, `2 < k < v`, `ell | k`). Sorted by `(lambda, v, k, c)`.
pub fn candidate_tuples(
    lambda_min: u64,
    lambda_max: u64,
    v_min: u64,
    v_max: u64,
) -> Result<Vec<ParameterTuple>> {
    check_ranges(lambda_min, lambda_max, v_min, v_max)?;
    let mut out = Vec::new();
    for lambda in lambda_min..=lambda_max {
        let k_max = 2 * lambda * lambda * (lambda - 1);
        for k in 3..=k_max {
            for ell in 2..k {
                if k % ell != 0 {
                    continue;
                }
                let e = ell - 1;
                let mut x = 1;
                while x * e <= lambda - 1 && x < k - 1 {
                    let num_d = k - 1 - x;
                    if num_d % e == 0 && (k - ell) % x == 0 {
                        let d = num_d / e;
                        let c = (k - ell) / x;
                        let v = c.checked_mul(d).expect("v fits in u64");
                        if c >= 2 && d >= 2 && (v_min..=v_max).contains(&v) && k < v {
                            let r = Rational::new(lambda * (c - 1), e);
                            let b = r * rat(v) / rat(k);
                            out.push(ParameterTuple {
                                lambda,
                                v,
                                k,
                                r,
                                b,
                                c,
                                d,
                                ell,
                            });
                        }
                    }
                    x += 1;
                }
            }
        }
    }
    out.sort_by_key(|t| t.sort_key());
    Ok(out)
}

/// Tuples passing every verdict, sorted by `(lambda, v, k, c)`.
pub fn enumerate_tuples(
    lambda_min: u64,
    lambda_max: u64,
    v_min: u64,
    v_max: u64,
) -> Result<Vec<ParameterTuple>> {
    Ok(candidate_tuples(lambda_min, lambda_max, v_min, v_max)?
        .into_iter()
        .filter(passes_all)
        .collect())
}

/// The two hypotheses of the prime-exclusion rule:
/// `0 <= d - p < k/ell < p` and `p` does not divide `b`.
pub fn prime_exclusion_applies(t: &ParameterTuple, p: u64) -> bool {
    let Some(b) = t.b_int() else {
        return false;
    };
    if t.ell == 0 || t.k % t.ell != 0 || t.d < p {
        return false;
    }
    let s = t.k / t.ell;
    t.d - p < s && s < p && b % p != 0
}

/// Integers `f` with `ell < f < c`, `f = c (mod p)` and
/// `(k-1) | lambda(d f - 1)`. An empty answer means a complete
/// point-transitive subdesign of the kind forced by a `p`-element of the
/// kernel cannot exist.
pub fn subdesign_feasible_f(t: &ParameterTuple, p: u64) -> Result<Vec<u64>> {
    if t.c % p == 0 {
        return Err(Error::Hypothesis(format!("p={p} divides c={}", t.c)));
    }
    if p <= t.lambda {
        return Err(Error::Hypothesis(format!(
            "p={p} does not exceed lambda={}",
            t.lambda
        )));
    }
    let km1 = t.k as u128 - 1;
    Ok((t.ell + 1..t.c)
        .filter(|f| f % p == t.c % p)
        .filter(|&f| (t.lambda as u128 * (t.d as u128 * f as u128 - 1)) % km1 == 0)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub v: u64,
    pub k: u64,
    pub lambda: Rational,
    /// `lambda (v-1) / (k-1)`
    pub r: Rational,
    /// `v r / k`
    pub b: Rational,
}

impl DesignParams {
    pub fn new(v: u64, k: u64, lambda: Rational) -> Self {
        let r = lambda * rat(v - 1) / rat(k - 1);
        let b = r * rat(v) / rat(k);
        DesignParams { v, k, lambda, r, b }
    }

    /// `lambda`, `r` and `b` are all integers.
    pub fn integral(&self) -> bool {
        self.lambda.is_integer() && self.r.is_integer() && self.b.is_integer()
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-({},{},{}) r={} b={}",
            self.v,
            self.k,
            show(&self.lambda),
            show(&self.r),
            show(&self.b)
        )
    }
}

/// Parameters of the inner design `2-(c, ell, lambda)` and the quotient
/// design `2-(d, k/ell, c^2 lambda / ell^2)`.
pub fn derived_design_params(t: &ParameterTuple) -> (DesignParams, DesignParams) {
    let inner = DesignParams::new(t.c, t.ell, rat(t.lambda));
    let ql = Rational::new(t.c * t.c * t.lambda, t.ell * t.ell);
    let quotient = DesignParams::new(t.d, t.k / t.ell, ql);
    (inner, quotient)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line1() -> ParameterTuple {
        ParameterTuple::new(3, 100, 12, 27, 225, 10, 10, 2)
    }

    #[test]
    fn dembowski_line1_and_line7() {
        assert!(dembowski_ok(3, 27, 12, 100).iter().all(|v| v.passed));
        assert!(dembowski_ok(4, 36, 12, 100).iter().all(|v| v.passed));
    }

    #[test]
    fn lambda_one_fails_second_condition() {
        let v = dembowski_ok(1, 10, 5, 41);
        let dem2 = v.iter().find(|v| v.rule_id == "DEM2").unwrap();
        assert!(!dem2.passed);
        assert!(dem2.witness.contains("1 >"));
    }

    #[test]
    fn lemma_parts() {
        assert!(lemma21_ok(&line1()).iter().all(|v| v.passed));
        let bad = ParameterTuple::new(3, 561, 36, 48, 748, 17, 33, 2);
        let failed: Vec<_> = lemma21_ok(&bad).into_iter().filter(|v| !v.passed).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].rule_id, "L2_1_iii");
        assert!(failed[0].witness.contains("867"));
    }

    #[test]
    fn csv_round_trip() {
        let t = line1();
        assert_eq!(ParameterTuple::from_csv(&t.to_csv()).unwrap(), t);
        let q = ParameterTuple {
            b: Rational::new(3045, 4),
            ..t
        };
        assert_eq!(ParameterTuple::from_csv(&q.to_csv()).unwrap(), q);
        let parsed = parse_csv(&to_csv(&[t, q])).unwrap();
        assert_eq!(parsed, vec![t, q]);
    }

    #[test]
    fn range_errors() {
        assert!(enumerate_tuples(1, 3, 1, 10).is_err());
        assert!(enumerate_tuples(3, 2, 1, 10).is_err());
    }

    #[test]
    fn prime_exclusion() {
        let line6 = ParameterTuple::new(3, 1156, 36, 99, 3179, 34, 34, 2);
        assert!(prime_exclusion_applies(&line6, 31));
        assert!(!prime_exclusion_applies(&line6, 2));
    }

    #[test]
    fn subdesign_examples() {
        let line8 = ParameterTuple::new(4, 231, 24, 40, 385, 11, 21, 2);
        assert_eq!(subdesign_feasible_f(&line8, 5).unwrap(), Vec::<u64>::new());
        assert!(subdesign_feasible_f(&line8, 11).is_err());
        assert!(subdesign_feasible_f(&line8, 3).is_err());
    }

    #[test]
    fn derived_params() {
        let (inner, quotient) = derived_design_params(&line1());
        assert_eq!((inner.v, inner.k, inner.lambda), (10, 2, rat(3)));
        assert_eq!((quotient.v, quotient.k, quotient.lambda), (10, 6, rat(75)));
        assert_eq!(quotient.b, rat(225));
        assert!(inner.integral() && quotient.integral());
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
