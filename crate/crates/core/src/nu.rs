//! Generic Nikiforov-Uvarov engine.
//!
//! Handles equations of hypergeometric type
//!
//! ```text
//! psi'' + (tau~ / sigma) psi' + (sigma~ / sigma^2) psi = 0
//! ```
//!
//! with `sigma` and `sigma~` at most quadratic and `tau~` at most linear.
//! Polynomials are stored as ascending coefficient arrays and may be
//! complex. The eigenvalue condition uses the textbook form
//! `lambda_n = -n tau' - n (n - 1) sigma'' / 2`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients `[c0, c1, c2]` of `c0 + c1 x + c2 x^2`.
pub type Quadratic = [Complex64; 3];
/// Coefficients `[d0, d1]` of `d0 + d1 x`.
pub type Linear = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const REL_TOL: f64 = 1e-10;

/// Sign in front of the square root in `pi(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

fn max_norm(values: &[Complex64]) -> f64 {
    values.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn all_finite(values: &[Complex64]) -> bool {
    values.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// An equation of hypergeometric type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuProblem {
    pub sigma: Quadratic,
    pub sigma_tilde: Quadratic,
    pub tau_tilde: Linear,
}

/// The admissible `K` values together with a note on degenerate cases.
#[derive(Debug, Clone, PartialEq)]
pub struct KRoots {
    pub values: Vec<Complex64>,
    pub diagnostic: Option<String>,
}

/// Weight of the form `exp(rate / x) * x^power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPowerWeight {
    pub rate: Complex64,
    pub power: Complex64,
}

impl ExpPowerWeight {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        (self.rate / x + self.power * x.ln()).exp()
    }

    /// `w'(x) / w(x)`.
    pub fn log_derivative(&self, x: Complex64) -> Complex64 {
        -self.rate / (x * x) + self.power / x
    }
}

/// Polynomial with ascending complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Everything the method derives from one choice of `K` and branch.
#[derive(Debug, Clone, PartialEq)]
pub struct NuSolution {
    pub k: Complex64,
    pub branch: Branch,
    pub pi: Linear,
    pub tau: Linear,
    pub lambda: Complex64,
    /// `None` unless `sigma = c2 x^2`.
    pub phi: Option<ExpPowerWeight>,
    pub rho: Option<ExpPowerWeight>,
}

impl NuSolution {
    pub fn phi(&self) -> Result<ExpPowerWeight> {
        self.phi.ok_or_else(unsupported_weight)
    }

    pub fn rho(&self) -> Result<ExpPowerWeight> {
        self.rho.ok_or_else(unsupported_weight)
    }
}

fn unsupported_weight() -> Error {
    Error::Unsupported("closed-form weights need sigma = c2 x^2".into())
}

impl NuProblem {
    pub fn new(sigma: Quadratic, sigma_tilde: Quadratic, tau_tilde: Linear) -> Result<Self> {
        if !(all_finite(&sigma) && all_finite(&sigma_tilde) && all_finite(&tau_tilde)) {
            return Err(Error::Domain("non-finite polynomial coefficient".into()));
        }
        if sigma.iter().all(|c| *c == ZERO) {
            return Err(Error::Domain("sigma is identically zero".into()));
        }
        Ok(Self {
            sigma,
            sigma_tilde,
            tau_tilde,
        })
    }

    /// Largest coefficient magnitude, the reference for "approximately zero".
    pub fn scale(&self) -> f64 {
        max_norm(&self.sigma)
            .max(max_norm(&self.sigma_tilde))
            .max(max_norm(&self.tau_tilde))
    }

    fn sigma_prime(&self) -> Linear {
        [self.sigma[1], self.sigma[2] * 2.0]
    }

    /// `(sigma' - tau~) / 2`.
    fn half_difference(&self) -> Linear {
        let sp = self.sigma_prime();
        [
            (sp[0] - self.tau_tilde[0]) * 0.5,
            (sp[1] - self.tau_tilde[1]) * 0.5,
        ]
    }

    /// `h^2 - sigma~`, the K-independent part of the radicand.
    fn radicand_base(&self) -> Quadratic {
        let h = self.half_difference();
        [
            h[0] * h[0] - self.sigma_tilde[0],
            h[0] * h[1] * 2.0 - self.sigma_tilde[1],
            h[1] * h[1] - self.sigma_tilde[2],
        ]
    }

    /// The polynomial under the square root in `pi(x)` for a given `K`.
    pub fn radicand(&self, k: Complex64) -> Quadratic {
        let a = self.radicand_base();
        [
            a[0] + k * self.sigma[0],
            a[1] + k * self.sigma[1],
            a[2] + k * self.sigma[2],
        ]
    }

    /// Coefficients of the radicand discriminant as a quadratic in `K`.
    fn discriminant_in_k(&self) -> Quadratic {
        let a = self.radicand_base();
        let c = self.sigma;
        [
            a[1] * a[1] - a[2] * a[0] * 4.0,
            a[1] * c[1] * 2.0 - a[0] * c[2] * 4.0 - a[2] * c[0] * 4.0,
            c[1] * c[1] - c[2] * c[0] * 4.0,
        ]
    }

    /// All `K` that turn the radicand into a perfect square.
    pub fn solve_k(&self) -> KRoots {
        let a = self.radicand_base();
        let tol = REL_TOL * self.scale().max(max_norm(&a));
        if a[1].norm() <= tol
            && a[2].norm() <= tol
            && self.sigma[1].norm() <= tol
            && self.sigma[2].norm() <= tol
        {
            return KRoots {
                values: Vec::new(),
                diagnostic: Some("radicand is constant for every K".into()),
            };
        }
        let q = self.discriminant_in_k();
        let qtol = REL_TOL * max_norm(&q).max(tol * tol);
        let candidates = if q[2].norm() > qtol {
            let root = (q[1] * q[1] - q[2] * q[0] * 4.0).sqrt();
            // Pick the sign that avoids cancellation, then use Vieta.
            let sum = if (q[1].conj() * root).re >= 0.0 {
                q[1] + root
            } else {
                q[1] - root
            };
            if sum.norm() == 0.0 {
                vec![ZERO]
            } else {
                let k1 = -sum / (q[2] * 2.0);
                let k2 = -(q[0] * 2.0) / sum;
                vec![k1, k2]
            }
        } else if q[1].norm() > qtol {
            vec![-q[0] / q[1]]
        } else if q[0].norm() <= qtol {
            return KRoots {
                values: vec![ZERO],
                diagnostic: Some("radicand discriminant vanishes identically; K = 0 chosen".into()),
            };
        } else {
            return KRoots {
                values: Vec::new(),
                diagnostic: Some(format!(
                    "radicand discriminant is the nonzero constant {}",
                    q[0]
                )),
            };
        };
        let mut values = Vec::new();
        for k in candidates {
            let residual = q[0] + k * (q[1] + k * q[2]);
            let size = q[0]
                .norm()
                .max((k * q[1]).norm())
                .max((k * k * q[2]).norm());
            if residual.norm() <= REL_TOL * size.max(qtol) {
                values.push(k);
            }
        }
        values.dedup_by(|x, y| (*x - *y).norm() <= REL_TOL * x.norm().max(1.0));
        let diagnostic = values
            .is_empty()
            .then(|| "no candidate K passed verification".to_string());
        KRoots { values, diagnostic }
    }

    /// `pi(x) = (sigma' - tau~)/2 +/- sqrt(radicand)` with the square root
    /// taken coefficient-wise from the squared linear factor.
    pub fn pi_poly(&self, k: Complex64, branch: Branch) -> Result<Linear> {
        let r = self.radicand(k);
        let size = max_norm(&r).max(REL_TOL * self.scale());
        let (r0, r1) = if r[0].norm() > REL_TOL * size {
            let r0 = r[0].sqrt();
            (r0, r[1] / (r0 * 2.0))
        } else {
            (ZERO, r[2].sqrt())
        };
        let mismatch = (r[1] - r0 * r1 * 2.0).norm().max((r[2] - r1 * r1).norm());
        if mismatch > 1e-8 * size {
            return Err(Error::Consistency(format!(
                "radicand is not a perfect square for K = {k} (mismatch {mismatch:e})"
            )));
        }
        let h = self.half_difference();
        let s = branch.sign();
        Ok([h[0] + r0 * s, h[1] + r1 * s])
    }

    /// `tau = tau~ + 2 pi` and `lambda = K + pi'`.
    pub fn tau_lambda(&self, pi: Linear, k: Complex64) -> (Linear, Complex64) {
        let tau = [
            self.tau_tilde[0] + pi[0] * 2.0,
            self.tau_tilde[1] + pi[1] * 2.0,
        ];
        (tau, k + pi[1])
    }

    /// `lambda_n = -n tau' - n (n - 1) sigma'' / 2`.
    pub fn lambda_n(&self, tau: Linear, n: i64) -> Result<Complex64> {
        if n < 0 {
            return Err(Error::Domain(format!("polynomial index {n} is negative")));
        }
        let n = n as f64;
        let sigma_pp = self.sigma[2] * 2.0;
        Ok(-tau[1] * n - sigma_pp * (n * (n - 1.0) / 2.0))
    }

    /// Full solution for an explicit `K`.
    pub fn solve_with_k(&self, k: Complex64, branch: Branch) -> Result<NuSolution> {
        let pi = self.pi_poly(k, branch)?;
        let (tau, lambda) = self.tau_lambda(pi, k);
        let (phi, rho) = match self.pure_quadratic_sigma() {
            Some(c2) => (
                Some(ExpPowerWeight {
                    rate: -pi[0] / c2,
                    power: pi[1] / c2,
                }),
                Some(ExpPowerWeight {
                    rate: -tau[0] / c2,
                    power: (tau[1] - c2 * 2.0) / c2,
                }),
            ),
            None => (None, None),
        };
        Ok(NuSolution {
            k,
            branch,
            pi,
            tau,
            lambda,
            phi,
            rho,
        })
    }

    /// Full solution using the first admissible `K`.
    pub fn solve(&self, branch: Branch) -> Result<NuSolution> {
        let roots = self.solve_k();
        let k = roots.values.first().copied().ok_or_else(|| {
            Error::Domain(
                roots
                    .diagnostic
                    .unwrap_or_else(|| "no admissible K".to_string()),
            )
        })?;
        self.solve_with_k(k, branch)
    }

    fn pure_quadratic_sigma(&self) -> Option<Complex64> {
        let tol = REL_TOL * max_norm(&self.sigma);
        (self.sigma[0].norm() <= tol && self.sigma[1].norm() <= tol && self.sigma[2] != ZERO)
            .then_some(self.sigma[2])
    }

    /// `y_n(x) = (1/rho) d^n/dx^n [sigma^n rho]` with unit normalization.
    ///
    /// For `sigma = c2 x^2` and `rho = exp(c/x) x^k` every derivative keeps
    /// the shape `exp(c/x) x^k * (Laurent polynomial)`, using
    /// `d/dx [exp(c/x) x^(k+j)] = exp(c/x) x^k (-c x^(j-2) + (k+j) x^(j-1))`.
    /// After `n` steps only exponents `0..=n` remain.
    pub fn rodrigues_y(&self, rho: &ExpPowerWeight, n: usize) -> Result<Polynomial> {
        let c2 = self.pure_quadratic_sigma().ok_or_else(unsupported_weight)?;
        let top = 2 * n;
        let mut coeffs = vec![ZERO; top + 1];
        coeffs[top] = c2.powu(n as u32);
        for _ in 0..n {
            let mut next = vec![ZERO; top + 1];
            for (j, &a) in coeffs.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                if j >= 2 {
                    next[j - 2] -= a * rho.rate;
                } else {
                    return Err(Error::Numeric(
                        "Rodrigues exponent left the polynomial range".into(),
                    ));
                }
                next[j - 1] += a * (rho.power + j as f64);
            }
            coeffs = next;
        }
        coeffs.truncate(n + 1);
        Ok(Polynomial { coeffs })
    }

    /// Residual of the original equation for `psi = phi * y` at `x`,
    /// using exact derivatives of the weight and the polynomial.
    pub fn ode_residual(&self, phi: &ExpPowerWeight, y: &Polynomial, x: Complex64) -> Complex64 {
        let dy = derivative(&y.coeffs);
        let ddy = derivative(&dy);
        let (y0, y1, y2) = (y.eval(x), horner(&dy, x), horner(&ddy, x));
        let g = phi.log_derivative(x);
        let g1 = phi.rate * 2.0 / (x * x * x) - phi.power / (x * x);
        // psi / phi and its derivatives divided by phi.
        let p0 = y0;
        let p1 = y1 + g * y0;
        let p2 = y2 + g * y1 * 2.0 + (g1 + g * g) * y0;
        let sigma = horner(&self.sigma, x);
        let sigma_t = horner(&self.sigma_tilde, x);
        let tau_t = horner(&self.tau_tilde, x);
        sigma * sigma * p2 + sigma * tau_t * p1 + sigma_t * p0
    }
}

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &c)| c * j as f64)
        .collect()
}

/// `lambda - lambda_n` for the problem produced by `embedding(param)`.
///
/// A root in `param` is an eigenvalue of the embedded family.
pub fn eigencondition_residual<F>(
    embedding: F,
    param: Complex64,
    n: i64,
    branch: Branch,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<NuProblem>,
{
    let problem = embedding(param)?;
    let tol = REL_TOL * problem.scale();
    if problem.sigma_tilde.iter().all(|c| c.norm() <= tol) {
        return Err(Error::Domain(
            "embedding produced a vanishing sigma~".into(),
        ));
    }
    let sol = problem.solve(branch)?;
    Ok(sol.lambda - problem.lambda_n(sol.tau, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    fn real_problem(alpha: f64, beta: f64, gamma: f64) -> NuProblem {
        NuProblem::new(
            [c(0.0), c(0.0), c(1.0)],
            [c(alpha), c(beta), c(gamma)],
            [c(0.0), c(-4.0)],
        )
        .unwrap()
    }

    fn complex_problem(alpha: f64, beta: Complex64, gamma: f64, p: f64) -> NuProblem {
        NuProblem::new(
            [c(0.0), c(0.0), c(1.0)],
            [c(-alpha), -beta, c(-gamma)],
            [Complex64::new(0.0, 4.0 * p), c(4.0)],
        )
        .unwrap()
    }

    #[test]
    fn real_family_k() {
        let (al, be, ga) = (-3.7, 2.2, -1.3);
        let k = real_problem(al, be, ga).solve_k();
        assert_eq!(k.values.len(), 1);
        let expected = (-36.0 * al - be * be + 4.0 * al * ga) / (4.0 * al);
        assert!(close(k.values[0], c(expected), 1e-12));
    }

    #[test]
    fn complex_family_k() {
        let (al, ga, p) = (-2.1, 0.8, 0.35);
        let be = Complex64::new(1.7, -8.0 * p);
        let k = complex_problem(al, be, ga, p).solve_k();
        assert_eq!(k.values.len(), 1);
        let i = Complex64::i();
        let expected = (-16.0 * p * p * ga - 8.0 * i * p * be + 4.0 * al - be * be + 4.0 * al * ga)
            / (4.0 * (4.0 * p * p - al));
        assert!(close(k.values[0], expected, 1e-12));
    }

    #[test]
    fn trivial_perfect_square() {
        let sigma = [c(0.0), c(0.0), c(1.0)];
        let p = NuProblem::new(sigma, sigma, [c(0.0), c(2.0)]).unwrap();
        let k = p.solve_k();
        assert_eq!(k.values, vec![c(0.0)]);
        assert!(k.diagnostic.is_some());
    }

    #[test]
    fn constant_radicand_gives_no_k() {
        let p = NuProblem::new(
            [c(1.0), c(0.0), c(0.0)],
            [c(2.0), c(0.0), c(0.0)],
            [c(0.0), c(0.0)],
        )
        .unwrap();
        let k = p.solve_k();
        assert!(k.values.is_empty());
        assert!(k.diagnostic.is_some());
    }

    #[test]
    fn real_family_pi_tau() {
        let (al, be, ga) = (-3.7, 2.2, -1.3);
        let p = real_problem(al, be, ga);
        let k = p.solve_k().values[0];
        let s = (-al).sqrt();
        let plus = p.pi_poly(k, Branch::Plus).unwrap();
        let minus = p.pi_poly(k, Branch::Minus).unwrap();
        // The printed "3x +/- (2 alpha + x beta) / (2 sqrt(-alpha))" with "+"
        // is the Minus branch here; the printed tau belongs to Plus.
        let printed_pi = [c(2.0 * al / (2.0 * s)), c(3.0 + be / (2.0 * s))];
        assert!(close(minus[0], printed_pi[0], 1e-12) && close(minus[1], printed_pi[1], 1e-12));
        let (tau, lambda) = p.tau_lambda(plus, k);
        let printed_tau = [c(2.0 * s), c(2.0 + al * be / (-al).powf(1.5))];
        assert!(close(tau[0], printed_tau[0], 1e-12) && close(tau[1], printed_tau[1], 1e-12));
        assert!(close(lambda, k + plus[1], 1e-15));
        // Both branches sum to sigma' - tau~.
        for x in [0.3, 1.1, 2.7] {
            let sum = plus[0] + minus[0] + (plus[1] + minus[1]) * x;
            assert!(close(sum, c(6.0 * x), 1e-12));
        }
    }

    #[test]
    fn complex_family_pi_tau_lambda() {
        let (al, ga, p) = (-2.1, 0.8, 0.35);
        let be = Complex64::new(1.7, -8.0 * p);
        let prob = complex_problem(al, be, ga, p);
        let k = prob.solve_k().values[0];
        let i = Complex64::i();
        let root = c(al - 4.0 * p * p).sqrt();
        let pi = prob.pi_poly(k, Branch::Plus).unwrap();
        for x in [0.2, 0.9, 1.6] {
            let expected = -x - 2.0 * i * p
                + 0.5 * (-8.0 * p * p + 4.0 * i * p * x + 2.0 * al + x * be) / root;
            assert!(close(pi[0] + pi[1] * x, expected, 1e-12));
        }
        let (tau, _) = prob.tau_lambda(pi, k);
        for x in [0.2, 0.9, 1.6] {
            let expected =
                (-8.0 * p * p + 4.0 * i * p * x + 2.0 * al + x * be + 2.0 * x * root) / root;
            assert!(close(tau[0] + tau[1] * x, expected, 1e-12));
        }
        for n in 0..4 {
            let nf = n as f64;
            let expected = -nf * (4.0 * i * p + be + (nf + 1.0) * root) / root;
            assert!(close(prob.lambda_n(tau, n).unwrap(), expected, 1e-12));
        }
    }

    #[test]
    fn real_family_lambda_n() {
        let (al, be, ga) = (-3.7, 2.2, -1.3);
        let p = real_problem(al, be, ga);
        let sol = p.solve(Branch::Plus).unwrap();
        let tau_p = 2.0 + al * be / (-al).powf(1.5);
        for n in 0..5 {
            let nf = n as f64;
            let expected = -nf * (nf - 1.0) - nf * tau_p;
            assert!(close(p.lambda_n(sol.tau, n).unwrap(), c(expected), 1e-12));
        }
        assert_eq!(p.lambda_n(sol.tau, 0).unwrap(), c(0.0));
        assert!(p.lambda_n(sol.tau, -1).is_err());
    }

    #[test]
    fn zero_pi_keeps_tau() {
        let p = real_problem(-1.0, 0.5, 0.2);
        let (tau, lambda) = p.tau_lambda([c(0.0), c(0.0)], c(1.5));
        assert_eq!(tau, p.tau_tilde);
        assert_eq!(lambda, c(1.5));
    }

    #[test]
    fn weights_satisfy_defining_equations() {
        let p = real_problem(-3.7, 2.2, -1.3);
        let sol = p.solve(Branch::Plus).unwrap();
        let phi = sol.phi().unwrap();
        let rho = sol.rho().unwrap();
        for x in [0.4, 0.8, 1.5, 2.5] {
            let x = c(x);
            let h = 1e-5;
            // phi'/phi = pi / sigma
            let num = (phi.eval(x + h) - phi.eval(x - h)) / (2.0 * h) / phi.eval(x);
            let pi = sol.pi[0] + sol.pi[1] * x;
            assert!(close(num, pi / (x * x), 1e-8));
            // (sigma rho)' = tau rho
            let f = |t: Complex64| t * t * rho.eval(t);
            let lhs = (f(x + h) - f(x - h)) / (2.0 * h);
            let rhs = (sol.tau[0] + sol.tau[1] * x) * rho.eval(x);
            assert!(close(lhs, rhs, 1e-8));
        }
    }

    #[test]
    fn rodrigues_low_orders() {
        let p = real_problem(-3.7, 2.2, -1.3);
        let sol = p.solve(Branch::Plus).unwrap();
        let rho = sol.rho().unwrap();
        let y0 = p.rodrigues_y(&rho, 0).unwrap();
        assert_eq!(y0.coeffs, vec![c(1.0)]);
        let y1 = p.rodrigues_y(&rho, 1).unwrap();
        assert!(close(y1.coeffs[0], sol.tau[0], 1e-13));
        assert!(close(y1.coeffs[1], sol.tau[1], 1e-13));
    }

    #[test]
    fn rodrigues_second_order_matches_finite_differences() {
        let p = real_problem(-2.9, 1.4, -0.6);
        let sol = p.solve(Branch::Plus).unwrap();
        let rho = sol.rho().unwrap();
        let y2 = p.rodrigues_y(&rho, 2).unwrap();
        let f = |t: f64| {
            let t = c(t);
            t.powu(4) * rho.eval(t)
        };
        for i in 0..20 {
            let x = 0.5 + 0.1 * i as f64;
            let h = 1e-3 * x;
            let fd = (f(x + h) - f(x) * 2.0 + f(x - h)) / (h * h)
                - (f(x + 2.0 * h) - f(x + h) * 4.0 + f(x) * 6.0 - f(x - h) * 4.0 + f(x - 2.0 * h))
                    / (12.0 * h * h);
            let exact = y2.eval(c(x)) * rho.eval(c(x));
            assert!(close(fd, exact, 1e-6), "x = {x}: {fd} vs {exact}");
        }
    }

    #[test]
    fn unsupported_sigma_shape() {
        let p = NuProblem::new(
            [c(1.0), c(0.0), c(1.0)],
            [c(1.0), c(0.0), c(0.0)],
            [c(0.0), c(1.0)],
        )
        .unwrap();
        let sol = p.solve(Branch::Plus).unwrap();
        assert!(matches!(sol.rho(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn eigencondition_constructed_root() {
        // n = 0 needs lambda = 0; choose gamma so that holds exactly.
        let (al, be) = (-4.0, 3.0);
        let s = 2.0;
        // lambda = -6 + u^2/4 - u/2 + gamma with u = beta / s.
        let u = be / s;
        let ga = 6.0 - u * u / 4.0 + u / 2.0;
        let embed = |a: Complex64| {
            NuProblem::new(
                [c(0.0), c(0.0), c(1.0)],
                [a, c(be), c(ga)],
                [c(0.0), c(-4.0)],
            )
        };
        let r = eigencondition_residual(embed, c(al), 0, Branch::Plus).unwrap();
        assert!(r.norm() < 1e-12);
        let r = eigencondition_residual(embed, c(al + 0.1), 0, Branch::Plus).unwrap();
        assert!(r.norm() > 1e-3);
    }

    #[test]
    fn eigencondition_degenerate_embedding() {
        let embed =
            |_: Complex64| NuProblem::new([c(0.0), c(0.0), c(1.0)], [c(0.0); 3], [c(0.0), c(-4.0)]);
        assert!(eigencondition_residual(embed, c(1.0), 0, Branch::Plus).is_err());
    }
}
