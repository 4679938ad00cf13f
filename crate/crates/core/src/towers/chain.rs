use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{inner_exponent, nns_bound, BoundVariant, TowerError, TowerNumber, TowerOrdering};
use crate::bigint;
use crate::gotzmann::hoa_fraction;

/// Exact values with more decimal digits than this are abbreviated.
const SHOWN_DIGITS: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepMode {
    Exact,
    Tower,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub step: u32,
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
    pub mode: StepMode,
    pub pass: bool,
    /// `log2(rhs) - log2(lhs)`; `null` when it does not fit an `f64`.
    pub margin_log2: Option<f64>,
    /// Tower rendering of the margin when `margin_log2` is `null`.
    pub margin_log2_tower: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainAudit {
    pub d: u32,
    pub r: u32,
    pub all_pass: bool,
    pub steps: Vec<ChainStep>,
}

#[derive(Clone, Copy, Debug)]
pub struct ChainConfig {
    /// Quantities predicted to exceed this many decimal digits are compared
    /// in tower form.
    pub digit_cap: u64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig { digit_cap: 100_000 }
    }
}

fn show_big(v: &BigUint) -> String {
    if bigint::decimal_digits(v) <= SHOWN_DIGITS {
        v.to_string()
    } else {
        show_log2(bigint::log2(v))
    }
}

/// `~m.mmmme+k` for the number `2^l`.
fn show_log2(l: f64) -> String {
    let l10 = l * std::f64::consts::LOG10_2;
    let k = l10.floor();
    format!("~{:.4}e+{}", 10f64.powf(l10 - k), k as i64)
}

fn show_tower(v: &TowerNumber) -> String {
    if let Some(e) = v.exact() {
        return show_big(e);
    }
    match v.to_f64() {
        Some(x) if x < 1e24 => format!("{x:.6}"),
        Some(x) => show_log2(x.log2()),
        None => match v.log2().ok().and_then(|l| l.to_f64()) {
            Some(l) => show_log2(l),
            None => v.render(),
        },
    }
}

fn from_log2(l: f64) -> Result<TowerNumber, TowerError> {
    TowerNumber::from_f64(l)?.exp2()
}

/// `log2(a * base^c + base)` for `c >= 1`, stable for huge `log2 base`.
fn log2_scaled_power_plus(a: f64, lbase: f64, c: f64) -> f64 {
    c * lbase + (a + (-(c - 1.0) * lbase).exp2()).log2()
}

/// `log2(n!)`.
fn log2_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

struct Builder {
    steps: Vec<ChainStep>,
}

impl Builder {
    fn push(&mut self, claim: &str, lhs: String, rhs: String, mode: StepMode, pass: bool, margin: Option<f64>, tower: Option<String>) {
        let margin = margin.filter(|m| m.is_finite());
        self.steps.push(ChainStep {
            step: self.steps.len() as u32 + 1,
            claim: claim.to_string(),
            lhs,
            rhs,
            mode,
            pass,
            margin_log2: margin,
            margin_log2_tower: if margin.is_none() { tower } else { None },
        });
    }

    fn exact(&mut self, claim: &str, lhs: &BigUint, rhs: &BigUint) {
        let margin = if lhs.bits() == 0 { None } else { Some(bigint::log2(rhs) - bigint::log2(lhs)) };
        self.push(claim, show_big(lhs), show_big(rhs), StepMode::Exact, lhs <= rhs, margin, None);
    }

    /// Cross-multiplied exact comparison `ln / ld <= rn / rd`.
    fn exact_fraction(&mut self, claim: &str, (ln, ld): (&BigUint, &BigUint), (rn, rd): (&BigUint, &BigUint)) {
        let (a, b) = (ln * rd, rn * ld);
        let margin = bigint::log2(&b) - bigint::log2(&a);
        let lhs = show_log2(bigint::log2(ln) - bigint::log2(ld));
        let rhs = show_log2(bigint::log2(rn) - bigint::log2(rd));
        self.push(claim, lhs, rhs, StepMode::Exact, a <= b, Some(margin), None);
    }

    /// Both sides known through their base-2 logarithms, with a margin
    /// derived in closed form rather than by subtracting the two.
    /// Rounding of the logarithms is tolerated at relative size 1e-12.
    fn logs(&mut self, claim: &str, llhs: f64, lrhs: f64, margin: f64) {
        let pass = margin >= -1e-12 * lrhs.abs().max(1.0);
        self.push(claim, show_log2(llhs), show_log2(lrhs), StepMode::Tower, pass, Some(margin), None);
    }

    fn towers(&mut self, claim: &str, lhs: &TowerNumber, rhs: &TowerNumber) -> Result<(), TowerError> {
        let ord = lhs.compare(rhs);
        let pass = matches!(ord, TowerOrdering::Less | TowerOrdering::Equal);
        let (ll, lr) = (lhs.log2()?, rhs.log2()?);
        let margin = match (ll.to_f64(), lr.to_f64()) {
            (Some(a), Some(b)) => Some(b - a),
            _ => None,
        };
        let tower = Some(format!("{} - {}", lr.render(), ll.render()));
        self.push(claim, show_tower(lhs), show_tower(rhs), StepMode::Tower, pass, margin, tower);
        Ok(())
    }
}

/// Check each inequality of the argument that bounds the torsion by the
/// tower `exp2 exp2 exp2 exp_d exp2(2r + 6 log2 r - 2)`, at concrete
/// `(d, r)`. Steps with manageable sizes are decided with big integers.
pub fn chain_audit(d: u32, r: u32, config: &ChainConfig) -> Result<ChainAudit, TowerError> {
    if d < 2 || r < 3 || r > 24 {
        return Err(TowerError::OutOfRange(format!("need d >= 2 and 3 <= r <= 24 (got d = {d}, r = {r})")));
    }
    let too_large = |e: bigint::TooLarge| TowerError::OutOfRange(e.to_string());
    let mut b = Builder { steps: Vec::new() };

    let (df, rf) = (d as f64, r as f64);
    let dr = BigUint::from(d) * r;
    let l_dr = (df * rf).log2();
    let e_gotz = r as u64 * (1u64 << (r - 1));
    let e_m = r as u64 * e_gotz;
    let l_m = e_m as f64 * l_dr;
    let l_t = (e_m as f64) * l_m;
    let digits = |l: f64| l * std::f64::consts::LOG10_2;
    let exact_m = digits(l_m) <= config.digit_cap as f64;
    let exact_t = digits(l_t) <= config.digit_cap as f64;

    // n = dr dominates (d - 1) codim X, with codim X <= r - 2.
    b.exact("n = dr >= (d-1)(r-2)", &BigUint::from((d - 1) * (r - 2)), &dr);

    // The Gotzmann numbers involved are covered by a single majorant.
    let pow = |base: &BigUint, e: u64| bigint::pow(base, e).map_err(too_large);
    let two_e = pow(&BigUint::from(2u32), e_gotz)?;
    let inter = if exact_m {
        Some(pow(&(pow(&dr, r as u64 - 1)? * 3u32 + &dr * 2u32), e_gotz)?)
    } else {
        None
    };
    for kdim in 2..=r {
        let claim = format!("Hoa bound at Krull dimension {kdim} <= (3/2 (dr)^(r-1) + dr)^(r 2^(r-1))");
        match &inter {
            Some(inter) => {
                let (num, den) = hoa_fraction(&dr, kdim, r + 1 - kdim).map_err(too_large)?;
                b.exact_fraction(&claim, (&num, &den), (inter, &two_e));
            }
            None => {
                let c = (r + 1 - kdim) as f64;
                let ek = kdim as f64 * (2f64).powi(kdim as i32 - 1);
                let ll = ek * log2_scaled_power_plus(1.5, l_dr, c);
                let lr = e_gotz as f64 * log2_scaled_power_plus(1.5, l_dr, rf - 1.0);
                b.logs(&claim, ll, lr, lr - ll);
            }
        }
    }

    let m = if exact_m { Some(pow(&dr, e_m)?) } else { None };
    let inner_margin = |l: f64| e_gotz as f64 * (l - (1.5 + (-(rf - 2.0) * l).exp2()).log2());
    match (&inter, &m) {
        (Some(inter), Some(m)) => b.exact_fraction("(3/2 (dr)^(r-1) + dr)^(r 2^(r-1)) <= m", (inter, &two_e), (m, &BigUint::one())),
        _ => {
            let ll = e_gotz as f64 * log2_scaled_power_plus(1.5, l_dr, rf - 1.0);
            b.logs("(3/2 (dr)^(r-1) + dr)^(r 2^(r-1)) <= m", ll, l_m, inner_margin(l_dr));
        }
    }

    let t = if exact_t { m.as_ref().map(|m| pow(m, e_m)).transpose()? } else { None };
    match (&m, &t) {
        (Some(m), Some(t)) => {
            let lhs = pow(&(pow(m, r as u64 - 1)? * 3u32 + m * 2u32), e_gotz)?;
            b.exact_fraction("(3/2 m^(r-1) + m)^(r 2^(r-1)) <= t", (&lhs, &two_e), (t, &BigUint::one()));
        }
        _ => {
            let ll = e_gotz as f64 * log2_scaled_power_plus(1.5, l_m, rf - 1.0);
            b.logs("(3/2 m^(r-1) + m)^(r 2^(r-1)) <= t", ll, l_t, inner_margin(l_m));
        }
    }

    let lhs = BigUint::from(e_m).pow(2);
    let rhs = BigUint::from(r).pow(4) << (2 * r - 2);
    b.push(
        "(r^2 2^(r-1))^2 = r^4 2^(2r-2)",
        lhs.to_string(),
        rhs.to_string(),
        StepMode::Exact,
        lhs == rhs,
        Some(0.0),
        None,
    );

    let r_fact = log2_factorial(r);
    match &t {
        Some(t) => {
            let floor = pow(&BigUint::from(6u32), 1295)? * &dr;
            b.exact("t >= 6^1295 dr", &floor, t);
            let tr = pow(t, r as u64)?;
            let binom = bigint::binomial(&(t + r + 1u32), r as u64);
            b.exact("C(t+r+1, r) + 1 <= t^r", &(binom + 1u32), &tr);
            let binom = bigint::binomial(&(t + r), r as u64);
            b.exact("4 C(t+r, r) <= t^r", &(binom * 4u32), &tr);
            let dd = &tr * &tr;
            b.exact("D^2 + 2D <= 4 D^2 at D = t^r", &(&dd + &tr * 2u32), &(dd * 4u32));
        }
        None => {
            let floor = 1295.0 * 6f64.log2() + l_dr;
            b.logs("t >= 6^1295 dr", floor, l_t, l_t - floor);
            // (t + k)^r / t^r and the +1 are below 2^-l_t relative size.
            let slack = ((rf + 2.0) * rf * (-l_t).exp2()) / std::f64::consts::LN_2;
            let l_tr = rf * l_t;
            b.logs("C(t+r+1, r) + 1 <= t^r", l_tr - r_fact, l_tr, r_fact - slack);
            b.logs("4 C(t+r, r) <= t^r", l_tr - r_fact + 2.0, l_tr, r_fact - 2.0 - slack);
            let ll = 2.0 * l_tr + (1.0 + 2.0 * (-l_tr).exp2()).log2();
            b.logs("D^2 + 2D <= 4 D^2 at D = t^r", ll, 2.0 * l_tr + 2.0, 2.0 - (1.0 + 2.0 * (-l_tr).exp2()).log2());
        }
    }

    // t^r as a tower; everything from here on is beyond exact range.
    let tr = from_log2(rf * l_t)?;
    let lhs = TowerNumber::from_f64(1.0 + rf * l_t)?;
    let rhs = tr.scale(0.5)?.exp2()?;
    b.towers("1 + r log2 t <= 2^(t^r / 2)", &lhs, &rhs)?;

    let lhs = tr.scale(0.25)?.add(&TowerNumber::from_u64(1))?.exp2()?.add(&tr.scale(0.5)?)?;
    let rhs = tr.exp2()?;
    b.towers("2^(t^r/4 + 1) + t^r/2 <= 2^(t^r)", &lhs, &rhs)?;

    let log_d = |x: f64| x / df.log2();
    let lhs = rf * log_d(l_t);
    let scale = rf.powi(5) * (2f64).powi(2 * r as i32 - 2);
    let rhs = scale * (1.0 + log_d(rf.log2()));
    let rel = (lhs - rhs).abs() / rhs;
    b.push(
        "r log_d t = r^5 2^(2r-2) (1 + log_d r)",
        format!("{lhs:.6}"),
        format!("{rhs:.6}"),
        StepMode::Tower,
        rel <= 1e-9,
        Some(rhs.log2() - lhs.log2()),
        None,
    );

    // 1 + log_d r <= r is d r <= d^r.
    b.exact("r <= d^(r-1)", &BigUint::from(r), &BigUint::from(d).pow(r - 1));

    // The torsion is at most (2D)^(N 2^N) <= 2^2^2^(t^r).
    let lhs = tr.exp2()?.exp2()?.exp2()?;
    let refined = nns_bound(d, r, BoundVariant::Refined)?;
    b.towers("2^2^2^(t^r) <= exp2 exp2 exp2 exp_d exp2(2r + 6 log2 r - 2)", &lhs, &refined)?;

    let headline = nns_bound(d, r, BoundVariant::Headline)?;
    let (ri, hi) = (inner_exponent(r, BoundVariant::Refined), inner_exponent(r, BoundVariant::Headline));
    b.towers("refined tower <= headline tower", &refined, &headline)?;
    if let Some(last) = b.steps.last_mut() {
        // Same shape, inner exponents differ by exactly 2.
        last.pass &= ri + 2.0 == hi;
    }

    let all_pass = b.steps.iter().all(|s| s.pass);
    Ok(ChainAudit { d, r, all_pass, steps: b.steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_parameters_pass() {
        for (d, r) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
            let a = chain_audit(d, r, &ChainConfig::default()).unwrap();
            for s in &a.steps {
                assert!(s.pass, "({d}, {r}) step {} `{}` failed: {} vs {}", s.step, s.claim, s.lhs, s.rhs);
            }
        }
    }

    #[test]
    fn exact_and_tower_agree_on_verdicts() {
        let exact = chain_audit(2, 3, &ChainConfig::default()).unwrap();
        let tower = chain_audit(2, 3, &ChainConfig { digit_cap: 10 }).unwrap();
        assert_eq!(exact.steps.len(), tower.steps.len());
        for (a, b) in exact.steps.iter().zip(&tower.steps) {
            assert_eq!(a.claim, b.claim);
            assert_eq!(a.pass, b.pass, "{}", a.claim);
            if let (Some(x), Some(y)) = (a.margin_log2, b.margin_log2) {
                assert!((x - y).abs() < 1e-6 * x.abs().max(1.0), "{}: {x} vs {y}", a.claim);
            }
        }
        assert!(tower.steps.iter().any(|s| s.claim.starts_with("C(t+r+1") && s.mode == StepMode::Tower));
    }

    #[test]
    fn identity_value() {
        let a = chain_audit(2, 3, &ChainConfig::default()).unwrap();
        let s = a.steps.iter().find(|s| s.claim.starts_with("r log_d t")).unwrap();
        let v: f64 = s.rhs.parse().unwrap();
        let direct = 3.0 * 1296.0 * 6f64.log2();
        assert!((v - direct).abs() < 1e-6 && (v - 10050.33).abs() < 0.01);
        assert!(chain_audit(1, 3, &ChainConfig::default()).is_err());
    }

    #[test]
    fn abbreviation() {
        assert_eq!(show_log2(10.0), "~1.0240e+3");
        assert_eq!(show_big(&BigUint::from(1234u32)), "1234");
    }
}
