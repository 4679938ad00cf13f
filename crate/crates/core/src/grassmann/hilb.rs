use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    l_matrix, lambda_matrix, linear_conditions, plucker_quadrics, FittingSystem, GrassmannError, PluckerPoint,
    PluckerSpace, DEFAULT_COLUMN_BUDGET, DEFAULT_MINOR_BUDGET,
};
use crate::cohomology::HilbertPolynomial;
use crate::field::{Field, Rational};
use crate::gotzmann::gotzmann_decompose;
use crate::grassmann::plucker::ideal_degree_piece;
use crate::poly::{parse_polynomial, IdealPresentation, Monomial, Polynomial};

/// Largest `dim R_t` accepted by [`hilb_equations`].
pub const DEFAULT_MAX_DIM_V: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct HilbConfig {
    pub column_budget: usize,
    pub minor_budget: u64,
    pub max_dim_v: usize,
    /// Proceed, with a warning, when `t` is below the Gotzmann threshold.
    pub allow_below_threshold: bool,
    pub dedup_columns: bool,
}

impl Default for HilbConfig {
    fn default() -> Self {
        HilbConfig {
            column_budget: DEFAULT_COLUMN_BUDGET,
            minor_budget: DEFAULT_MINOR_BUDGET,
            max_dim_v: DEFAULT_MAX_DIM_V,
            allow_below_threshold: false,
            dedup_columns: true,
        }
    }
}

/// Equations for the Hilbert scheme of subschemes of `X ⊂ P^r` with
/// quotient Hilbert polynomial `Q`, inside `P(∧^n R_t)` with `n = P(t)`.
#[derive(Clone, Debug)]
pub struct HilbEquations {
    pub r: usize,
    pub t: u32,
    /// Hilbert polynomial of the ideal, `C(t+r, r) - Q`.
    pub p: HilbertPolynomial,
    pub q: HilbertPolynomial,
    pub dim_v: usize,
    pub dim_w: usize,
    pub n: usize,
    /// Minor size, `P(t+1) + 1`.
    pub m: usize,
    /// Basis of `V = R_t`, lexicographically descending.
    pub v_basis: Vec<Monomial>,
    pub space: PluckerSpace,
    pub plucker_quadrics: Vec<Polynomial<Rational>>,
    pub fitting: FittingSystem,
    /// The expanded nonzero minors, when their number is within budget.
    pub fitting_minors: Option<Vec<Polynomial<Rational>>>,
    pub linear_conditions: Vec<Polynomial<Rational>>,
    pub warnings: Vec<String>,
}

/// Verdicts of the three families of equations at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub quadrics: bool,
    pub fitting: bool,
    pub linear: bool,
    pub fitting_rank: usize,
}

impl PointCheck {
    pub fn accepted(&self) -> bool {
        self.quadrics && self.fitting && self.linear
    }
}

fn eval_u64(p: &HilbertPolynomial, t: u32) -> Result<usize, GrassmannError> {
    p.eval_integer(t as i64)
        .and_then(|v| v.to_usize())
        .ok_or_else(|| GrassmannError::InvalidParameters(format!("{p} is not a nonnegative integer at t = {t}")))
}

/// Multiplication by `x_k` from `R_t` to `R_{t+1}` in the lexicographically
/// descending bases.
fn multiplication_maps(nvars: usize, v: &[Monomial], w: &[Monomial]) -> Vec<Vec<Vec<Rational>>> {
    (0..nvars)
        .map(|k| {
            let xk = Monomial::var(k, nvars);
            let mut u = vec![vec![Rational::zero(); v.len()]; w.len()];
            for (j, m) in v.iter().enumerate() {
                let image = m.mul(&xk);
                let i = w.iter().position(|x| *x == image).expect("product lies in the next degree");
                u[i][j] = Rational::one();
            }
            u
        })
        .collect()
}

/// Assemble Plücker quadrics, Fitting minors of `Λ` built from the
/// multiplication maps `R_t -> R_{t+1}`, and, when `X` is given, the linear
/// conditions for `(I_X)_t ⊂ M`.
pub fn hilb_equations(
    r: usize,
    t: u32,
    q: &HilbertPolynomial,
    x: Option<&IdealPresentation<Rational>>,
    config: &HilbConfig,
) -> Result<HilbEquations, GrassmannError> {
    let nvars = r + 1;
    if let Some(x) = x {
        if x.nvars() != nvars {
            return Err(GrassmannError::InvalidParameters(format!("X lives in P^{} but r = {r}", x.r())));
        }
    }
    let v_basis = Monomial::all_of_degree(nvars, t);
    let w_basis = Monomial::all_of_degree(nvars, t + 1);
    let dim_v = v_basis.len();
    if dim_v > config.max_dim_v {
        return Err(GrassmannError::ScaleExceeded { dim_v, limit: config.max_dim_v });
    }
    let p = HilbertPolynomial::projective_space(r).sub(q);
    let n = eval_u64(&p, t)?;
    let m = eval_u64(&p, t + 1)? + 1;

    let mut warnings = Vec::new();
    let phi = gotzmann_decompose(q)?.s() as u32;
    let d = x.map_or(1, |x| x.d().max(1));
    let required = phi.max(d);
    if t < required {
        if !config.allow_below_threshold {
            return Err(GrassmannError::BelowThreshold { t, required });
        }
        warnings.push(format!("t = {t} is below max(Gotzmann number, d) = {required}; the equations need not cut out the Hilbert scheme"));
    }

    let space = PluckerSpace::new(n, dim_v)?;
    let plucker_quadrics = plucker_quadrics(&space);
    let l = l_matrix(n, dim_v, config.column_budget, config.dedup_columns)?;
    let lambda = lambda_matrix(&l, &multiplication_maps(nvars, &v_basis, &w_basis));
    let fitting = FittingSystem::new(lambda, m, space.clone())?;
    let fitting_minors = match fitting.minors(config.minor_budget) {
        Ok(list) => Some(list),
        Err(GrassmannError::MinorBudgetExceeded { count, budget }) => {
            warnings.push(format!("{count} minors exceed the budget of {budget}; Fitting conditions are evaluated by rank"));
            None
        }
        Err(e) => return Err(e),
    };
    let linear_conditions = match x {
        Some(x) => linear_conditions(&ideal_degree_piece(x, t), &space)?,
        None => Vec::new(),
    };
    Ok(HilbEquations {
        r,
        t,
        p,
        q: q.clone(),
        dim_v,
        dim_w: w_basis.len(),
        n,
        m,
        v_basis,
        space,
        plucker_quadrics,
        fitting,
        fitting_minors,
        linear_conditions,
        warnings,
    })
}

impl HilbEquations {
    pub fn check_point(&self, point: &PluckerPoint) -> PointCheck {
        let z = &point.coords;
        let quadrics = self.plucker_quadrics.iter().all(|f| f.eval(z).is_zero());
        let linear = self.linear_conditions.iter().all(|f| f.eval(z).is_zero());
        let fitting_rank = self.fitting.rank_at(z);
        let fitting = match &self.fitting_minors {
            Some(list) => list.iter().all(|f| f.eval(z).is_zero()),
            None => fitting_rank < self.m,
        };
        PointCheck { quadrics, fitting, linear, fitting_rank }
    }

    /// The coordinate points: spans of `n` basis monomials of `R_t`, listed
    /// with the monomials left out.
    pub fn coordinate_points(&self) -> Vec<(Vec<Monomial>, PluckerPoint)> {
        self.space
            .variables()
            .iter()
            .map(|v| {
                let missing = (0..self.dim_v).filter(|i| !v.index().contains(i)).map(|i| self.v_basis[i].clone()).collect();
                (missing, PluckerPoint::coordinate(v.index(), &self.space).expect("variables index n-subsets"))
            })
            .collect()
    }

    /// Degree audit of the Fitting part. Every entry of `Λ` must be a
    /// homogeneous linear form, which forces each minor to be zero or of
    /// degree exactly `m`; sampled minors and witness minors at the
    /// coordinate points where `Λ` has full rank are then checked directly.
    pub fn degree_audit(&self, samples: usize, seed: u64) -> DegreeAudit {
        let lambda = self.fitting.lambda();
        let entries_linear = (0..lambda.cols())
            .all(|j| lambda.column(j).iter().all(|f| f.is_zero() || f.to_polynomial(&self.space).homogeneous_degree() == Some(1)));
        let mut degrees: Vec<u32> = Vec::new();
        let mut zero = 0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut record = |p: &Polynomial<Rational>| match p.homogeneous_degree() {
            _ if p.is_zero() => zero += 1,
            Some(dg) => degrees.push(dg),
            None => degrees.push(u32::MAX),
        };
        if let Some(list) = &self.fitting_minors {
            list.iter().for_each(&mut record);
        } else {
            for (_, _, p) in self.fitting.sample_minors(samples, &mut rng) {
                record(&p);
            }
        }
        let mut witnesses = 0;
        for (_, point) in self.coordinate_points() {
            if let Some((_, _, p)) = self.fitting.witness_minor(&point.coords) {
                witnesses += 1;
                record(&p);
            }
        }
        let all_degree_m = degrees.iter().all(|&dg| dg as usize == self.m);
        DegreeAudit { m: self.m, entries_linear, checked_nonzero: degrees.len(), checked_zero: zero, witnesses, all_degree_m }
    }

    pub fn manifest(&self) -> HilbManifest {
        HilbManifest {
            r: self.r,
            t: self.t,
            p: self.p.to_string(),
            q: self.q.to_string(),
            dim_v: self.dim_v,
            dim_w: self.dim_w,
            n: self.n,
            m: self.m,
            plucker_variables: self.space.len(),
            lambda_columns: self.fitting.lambda().cols(),
            quadrics: self.plucker_quadrics.len(),
            fitting_minor_count: self.fitting.minor_count(),
            fitting_minors_expanded: self.fitting_minors.as_ref().map(Vec::len),
            linear_conditions: self.linear_conditions.len(),
            warnings: self.warnings.clone(),
        }
    }

    /// One equation per line in the `z_i_j` variables with integer
    /// coefficients; `#` lines separate the families.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let mut section = |title: &str, list: &[Polynomial<Rational>]| {
            let _ = writeln!(out, "# {title} ({})", list.len());
            for p in list {
                let _ = writeln!(out, "{}", self.space.display(&primitive_integer(p)));
            }
        };
        section("plucker quadrics", &self.plucker_quadrics);
        match &self.fitting_minors {
            Some(list) => section("fitting minors", list),
            None => section("fitting minors not expanded", &[]),
        }
        section("linear conditions", &self.linear_conditions);
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeAudit {
    pub m: usize,
    pub entries_linear: bool,
    pub checked_nonzero: usize,
    pub checked_zero: usize,
    pub witnesses: usize,
    pub all_degree_m: bool,
}

impl DegreeAudit {
    pub fn passes(&self) -> bool {
        self.entries_linear && self.all_degree_m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbManifest {
    pub r: usize,
    pub t: u32,
    pub p: String,
    pub q: String,
    pub dim_v: usize,
    pub dim_w: usize,
    pub n: usize,
    pub m: usize,
    pub plucker_variables: usize,
    pub lambda_columns: usize,
    pub quadrics: usize,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub fitting_minor_count: BigUint,
    /// Number of nonzero minors, `null` when not expanded.
    pub fitting_minors_expanded: Option<usize>,
    pub linear_conditions: usize,
    pub warnings: Vec<String>,
}

/// Clear denominators and divide by the content, leading sign kept.
fn primitive_integer(p: &Polynomial<Rational>) -> Polynomial<Rational> {
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled = p.scale(&Rational::from_integer(lcm));
    let gcd = scaled.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&c.to_integer().abs()));
    if gcd.is_zero() {
        return scaled;
    }
    scaled.scale(&Rational::from_integer(gcd).inv().unwrap())
}

/// Read equations written by [`HilbEquations::export`] back into
/// polynomials over the given Plücker space.
pub fn read_equations(text: &str, space: &PluckerSpace) -> Result<Vec<Polynomial<Rational>>, GrassmannError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut translated = String::with_capacity(body.len());
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            if chars[i] == 'z' {
                let mut j = i + 1;
                let mut index = Vec::new();
                while j < chars.len() && chars[j] == '_' {
                    let start = j + 1;
                    let mut k = start;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == start {
                        break;
                    }
                    index.push(chars[start..k].iter().collect::<String>().parse::<usize>().unwrap());
                    j = k;
                }
                let var = super::canonicalize(&index)
                    .filter(|(s, v)| *s == 1 && v.index().len() == space.n() && v.index().iter().all(|&x| x < space.dim_v()))
                    .map(|(_, v)| v)
                    .ok_or_else(|| GrassmannError::UnknownVariable {
                        line: lineno + 1,
                        column: i + 1,
                        name: chars[i..j].iter().collect(),
                    })?;
                let _ = write!(translated, "x{}", space.position(&var));
                i = j;
            } else {
                translated.push(chars[i]);
                i += 1;
            }
        }
        let p = parse_polynomial::<Rational>(&translated, space.len() - 1)?;
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_ideal;

    fn q(s: &str) -> HilbertPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn two_points_on_the_line() {
        let eqs = hilb_equations(1, 2, &q("2"), None, &HilbConfig::default()).unwrap();
        assert_eq!((eqs.n, eqs.m, eqs.dim_v, eqs.dim_w), (1, 3, 3, 4));
        assert_eq!(eqs.fitting_minors.as_deref(), Some(&[][..]));
        assert!(eqs.plucker_quadrics.is_empty() && eqs.linear_conditions.is_empty());
        for (_, pt) in eqs.coordinate_points() {
            assert!(eqs.check_point(&pt).accepted());
        }
    }

    #[test]
    fn conic_points() {
        let x = parse_ideal::<Rational>("x0*x2 - x1^2", 2).unwrap();
        let eqs = hilb_equations(2, 2, &q("1"), Some(&x), &HilbConfig::default()).unwrap();
        assert_eq!((eqs.n, eqs.m), (5, 10));
        assert!(eqs.fitting_minors.is_none());
        let mut accepted = Vec::new();
        for (missing, pt) in eqs.coordinate_points() {
            let c = eqs.check_point(&pt);
            if c.accepted() {
                accepted.push(missing[0].to_string());
            }
            if missing[0].to_string() == "x1^2" {
                assert!(c.fitting && !c.linear);
            }
        }
        accepted.sort();
        assert_eq!(accepted, vec!["x0^2", "x2^2"]);
    }

    #[test]
    fn threshold_and_scale() {
        assert!(matches!(
            hilb_equations(1, 1, &q("2"), None, &HilbConfig::default()),
            Err(GrassmannError::BelowThreshold { t: 1, required: 2 })
        ));
        let cfg = HilbConfig { allow_below_threshold: true, ..HilbConfig::default() };
        assert_eq!(hilb_equations(2, 1, &q("2"), None, &cfg).unwrap().warnings.len(), 1);
        assert!(matches!(
            hilb_equations(3, 3, &q("1"), None, &HilbConfig::default()),
            Err(GrassmannError::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn export_round_trip() {
        let x = parse_ideal::<Rational>("x0*x3 - x1*x2", 3).unwrap();
        let cfg = HilbConfig { max_dim_v: 12, ..HilbConfig::default() };
        let eqs = hilb_equations(3, 1, &q("2"), Some(&x), &HilbConfig { allow_below_threshold: true, ..cfg }).unwrap();
        let text = eqs.export();
        let back = read_equations(&text, &eqs.space).unwrap();
        let expected: Vec<Polynomial<Rational>> = eqs
            .plucker_quadrics
            .iter()
            .chain(eqs.fitting_minors.iter().flatten())
            .chain(&eqs.linear_conditions)
            .map(primitive_integer)
            .collect();
        assert_eq!(back, expected);
        assert!(read_equations("z_9_9 + 1", &eqs.space).is_err());
    }
}
