//! Uniqueness of the maximum of i.i.d. geometric variables.
//!
//! `ρ_p(n)` is the probability that the maximum of `n` geometric variables
//! with mean `1/p` is attained once. It oscillates around
//! `Υ_p(n) = pn Σ_{k∈ℤ} (1-p)^k exp(-(1-p)^k n)`, which is log-periodic
//! with ratio `1-p`; `ρ̄_p` is its maximum over one period.

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("p = {p} must lie in (0, 1]")))
    }
}

/// `Υ_p(x)`; zero when `p = 1`.
pub fn upsilon(p: f64, x: f64) -> Result<f64> {
    check_p(p)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid(format!("x = {x} must be positive")));
    }
    if p == 1.0 {
        return Ok(0.0);
    }
    let q = 1.0 - p;
    // the summand g(k) = q^k exp(-q^k x) peaks where q^k x ≈ 1
    let k0 = (-(x.ln()) / q.ln()).round() as i64;
    let term = |k: i64| {
        let qk = q.powi(k as i32);
        qk * (-qk * x).exp()
    };
    let mut sum = term(k0);
    for dir in [1i64, -1] {
        let mut k = k0 + dir;
        loop {
            let t = term(k);
            sum += t;
            if t < EPS * sum || t == 0.0 {
                break;
            }
            k += dir;
        }
    }
    Ok(p * x * sum)
}

/// `ρ_p(n) = Σ_{m≥1} n p (1-p)^{m-1} (1 - (1-p)^{m-1})^{n-1}`.
pub fn rho_n(p: f64, n: u64) -> Result<f64> {
    check_p(p)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if p == 1.0 {
        return Ok(if n == 1 { 1.0 } else { 0.0 });
    }
    let q = 1.0 - p;
    let nf = n as f64;
    let mut sum = 0.0;
    let mut qm = 1.0f64; // (1-p)^{m-1}
    loop {
        // (1 - qm)^{n-1} via ln_1p for accuracy when qm is tiny
        let tail = if qm >= 1.0 {
            if n == 1 {
                1.0
            } else {
                0.0
            }
        } else {
            ((n - 1) as f64 * (-qm).ln_1p()).exp()
        };
        let t = nf * p * qm * tail;
        sum += t;
        // past the bulk the terms shrink geometrically
        if qm * nf < 1.0 && t < EPS * sum.max(EPS) {
            break;
        }
        qm *= q;
        if qm == 0.0 {
            break;
        }
    }
    Ok(sum)
}

/// `ρ̄_p = max_x Υ_p(x)`, over one period `x ∈ (1-p, 1]` by a grid search
/// refined with golden-section search.
pub fn rho_bar(p: f64) -> Result<f64> {
    check_p(p)?;
    if p == 1.0 {
        return Ok(0.0);
    }
    let lo = 1.0 - p;
    let f = |x: f64| upsilon(p, x).expect("x > 0");
    // the period in log scale is uniform, so grid in ln x
    let (a0, b0) = (lo.ln(), 0.0f64);
    let grid = 10_000;
    let h = (b0 - a0) / grid as f64;
    let mut best = (f(1.0), 0.0f64);
    for k in 0..=grid {
        let u = a0 + k as f64 * h;
        let v = f(u.exp());
        if v > best.0 {
            best = (v, u);
        }
    }
    // the period wraps, so search around the best grid point without clamping
    let (mut a, mut b) = (best.1 - h, best.1 + h);
    let g = |u: f64| f(u.exp());
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while b - a > 1e-10 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = g(d);
        }
    }
    Ok(best.0.max(g((a + b) / 2.0)))
}

/// `(2/p)(√(ρ̄(1+ρ̄)) - ρ̄)`: the leading coefficient of the Tamari bound.
pub fn tamari_coefficient(p: f64) -> Result<f64> {
    let r = rho_bar(p)?;
    Ok(2.0 / p * ((r * (1.0 + r)).sqrt() - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpp::sample_geometric;
    use crate::sim::trial_rng;

    #[test]
    fn published_constants() {
        let r = rho_bar(0.5).unwrap();
        assert!((r - 0.72136).abs() < 2e-4, "{r}");
        let c = tamari_coefficient(0.5).unwrap();
        assert!((c - 1.57186).abs() < 1e-3, "{c}");
        assert_eq!(rho_bar(1.0).unwrap(), 0.0);
        assert_eq!(upsilon(1.0, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn log_periodic() {
        for p in [0.1, 0.3, 0.5, 0.8] {
            for k in 1..50 {
                let x = 0.05 * k as f64;
                let a = upsilon(p, (1.0 - p) * x).unwrap();
                let b = upsilon(p, x).unwrap();
                assert!((a - b).abs() < 1e-10, "p={p} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rho_n_small_and_asymptotic() {
        assert!((rho_n(0.5, 1).unwrap() - 1.0).abs() < 1e-14);
        // two geometrics: 1 - P(equal) = 1 - p/(2-p)
        assert!((rho_n(0.5, 2).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert_eq!(rho_n(1.0, 3).unwrap(), 0.0);
        for n in [1_000u64, 10_000] {
            let d = rho_n(0.5, n).unwrap() - upsilon(0.5, n as f64).unwrap();
            assert!(d.abs() < 0.01, "n={n}: {d}");
        }
    }

    #[test]
    fn rho_n_monte_carlo() {
        let (n, trials) = (20usize, 40_000);
        let mut hits = 0;
        for t in 0..trials {
            let mut rng = trial_rng(77, t as u64);
            let g: Vec<u64> = (0..n).map(|_| sample_geometric(0.3, &mut rng)).collect();
            let m = *g.iter().max().unwrap();
            if g.iter().filter(|&&x| x == m).count() == 1 {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        let exact = rho_n(0.3, n as u64).unwrap();
        let sd = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((freq - exact).abs() < 4.0 * sd, "{freq} vs {exact}");
    }
}
