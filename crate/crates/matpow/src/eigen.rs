//! Numeric root finding for the characteristic polynomial, root
//! clustering into multiplicities, and the dominant eigenvalue set.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// Default relative tolerance for merging nearby roots into one cluster.
/// Repeated roots of multiplicity m perturb like eps^(1/m), so this must
/// stay loose compared to machine precision.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// Default relative tolerance for membership on the spectral circle.
pub const DEFAULT_DOM_TOL: f64 = 1e-9;

const MAX_ITERATIONS: u32 = 500;

/// One clustered root with its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// The clustered spectrum of a monic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenStructure {
    roots: Vec<EigenRoot>,
    spectral_radius: f64,
    source_degree: usize,
    diagnostics: Vec<String>,
}

impl EigenStructure {
    /// Assembles a structure from known roots; multiplicities must sum
    /// to the degree and values must be pairwise distinct.
    pub fn from_roots(mut roots: Vec<EigenRoot>, source_degree: usize) -> Result<Self> {
        if roots.is_empty() || source_degree == 0 {
            return Err(Error::Dimension("empty eigenvalue structure".into()));
        }
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        if total != source_degree {
            return Err(Error::Consistency(format!(
                "multiplicities sum to {total}, expected the degree {source_degree}"
            )));
        }
        for r in &roots {
            if !r.value.re.is_finite() || !r.value.im.is_finite() {
                return Err(Error::InvalidInput("non-finite eigenvalue".into()));
            }
            if r.multiplicity == 0 {
                return Err(Error::InvalidInput("zero multiplicity".into()));
            }
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i].value == roots[j].value {
                    return Err(Error::Consistency(format!(
                        "duplicate eigenvalue {}",
                        roots[i].value
                    )));
                }
            }
        }
        sort_roots(&mut roots);
        let spectral_radius = roots.iter().map(|r| r.value.norm()).fold(0.0, f64::max);
        Ok(Self {
            roots,
            spectral_radius,
            source_degree,
            diagnostics: Vec::new(),
        })
    }

    /// Clustered roots, sorted by descending modulus.
    pub fn roots(&self) -> &[EigenRoot] {
        &self.roots
    }

    /// Max eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    /// True when every clustered multiplicity is 1.
    pub fn all_simple(&self) -> bool {
        self.roots.iter().all(|r| r.multiplicity == 1)
    }

    /// Every root whose modulus reaches the spectral circle up to the
    /// relative tolerance. Never empty; ties are all retained.
    pub fn dominant_set(&self, dom_tol: f64) -> Vec<EigenRoot> {
        let cutoff = self.spectral_radius * (1.0 - dom_tol);
        self.roots
            .iter()
            .copied()
            .filter(|r| r.value.norm() >= cutoff)
            .collect()
    }

    /// Warnings from the multiplicity cross-check; empty means clean.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }
}

fn sort_roots(roots: &mut [EigenRoot]) {
    roots.sort_by(|a, b| {
        b.value
            .norm()
            .total_cmp(&a.value.norm())
            .then(b.value.re.total_cmp(&a.value.re))
            .then(b.value.im.total_cmp(&a.value.im))
    });
}

/// Finds all k roots of a monic polynomial by Ehrlich-Aberth
/// simultaneous iteration, then merges roots within
/// `cluster_tol * max(1, rho)` of each other into multiplicity
/// clusters (multiplicity-weighted mean).
///
/// The iteration starts on a circle of radius 1 + max|a_j| (a bound on
/// every root), updates in a fixed order, and is fully deterministic.
pub fn find_roots(p: &Polynomial<f64>, cluster_tol: f64) -> Result<EigenStructure> {
    if !(cluster_tol > 0.0 && cluster_tol.is_finite()) {
        return Err(Error::InvalidInput(
            "cluster tolerance must be positive and finite".into(),
        ));
    }
    let k = p.degree();
    let full = p.full_coeffs();
    let deriv: Vec<f64> = full
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();

    let radius = 1.0 + p.low_coeffs().iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..k)
        .map(|l| {
            let angle = std::f64::consts::TAU * l as f64 / k as f64
                + std::f64::consts::PI / (2.0 * k as f64);
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut iterations = 0;
    let mut worst_residual = f64::INFINITY;
    for iter in 0..MAX_ITERATIONS {
        iterations = iter + 1;
        // Collective stop, checked before the sweep: freezing individual
        // roots would let the near-polygon constellation around a
        // multiple root collapse and lose backward stability.
        let all_within_target = z
            .iter()
            .all(|&zl| eval_complex(&full, zl).norm() <= residual_target(&full, zl.norm()));
        if all_within_target {
            break;
        }
        let mut max_step = 0.0f64;
        for l in 0..k {
            let zl = z[l];
            let pv = eval_complex(&full, zl);
            let dv = eval_complex(&deriv, zl);
            let newton = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // Stationary point; nudge off it deterministically.
                Complex64::new(radius * 1e-3, radius * 1e-3)
            };
            let mut deflate = Complex64::new(0.0, 0.0);
            for (m, &zm) in z.iter().enumerate() {
                if m == l {
                    continue;
                }
                let mut d = zl - zm;
                if d.norm() == 0.0 {
                    d = Complex64::new(radius.max(1.0) * 1e-12, 0.0);
                }
                deflate += d.inv();
            }
            let denom = Complex64::new(1.0, 0.0) - newton * deflate;
            let step = if denom.norm() > 0.0 { newton / denom } else { newton };
            let step = if step.re.is_finite() && step.im.is_finite() {
                step
            } else {
                Complex64::new(radius * 1e-3, -radius * 1e-3)
            };
            z[l] = zl - step;
            max_step = max_step.max(step.norm());
        }
        worst_residual = z
            .iter()
            .map(|&zl| eval_complex(&full, zl).norm())
            .fold(0.0, f64::max);
        if max_step <= 1e-15 * radius {
            break;
        }
    }

    let rho_est = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tol_abs = cluster_tol * rho_est.max(1.0);

    // Deterministic clustering: sort, then greedily merge into the
    // first cluster whose running mean is close enough.
    let mut sorted = z;
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut sums: Vec<(Complex64, usize)> = Vec::new();
    for zi in sorted {
        match sums
            .iter_mut()
            .find(|(sum, count)| (*sum / *count as f64 - zi).norm() <= tol_abs)
        {
            Some((sum, count)) => {
                *sum += zi;
                *count += 1;
            }
            None => sums.push((zi, 1)),
        }
    }
    let mut means: Vec<(Complex64, usize)> = sums
        .into_iter()
        .map(|(sum, count)| (sum / count as f64, count))
        .collect();

    // A multiplicity-m root blurs the iterates over a radius of order
    // (evaluation noise)^(1/m), which outgrows any fixed clustering
    // tolerance from m = 3 on. Walk a ladder of hypothesis radii and
    // merge groups only when the multiple-root hypothesis validates
    // against the derivative residuals, so genuinely distinct close
    // roots are never absorbed.
    let noise = residual_target(&full, rho_est.max(1.0));
    for m_hyp in 2..=k {
        let r_merge = 8.0 * noise.powf(1.0 / m_hyp as f64);
        if r_merge <= tol_abs {
            continue;
        }
        let groups = group_indices(&means, r_merge);
        let mut merged: Vec<(Complex64, usize)> = Vec::new();
        let mut consumed = vec![false; means.len()];
        for group in groups {
            if group.len() < 2 {
                continue;
            }
            let total: usize = group.iter().map(|&i| means[i].1).sum();
            if total != m_hyp {
                continue;
            }
            let weighted = group
                .iter()
                .map(|&i| means[i].0 * means[i].1 as f64)
                .sum::<Complex64>()
                / total as f64;
            if let Some(value) = validate_multiple_root(p, weighted, total, r_merge) {
                for &i in &group {
                    consumed[i] = true;
                }
                merged.push((value, total));
            }
        }
        if !merged.is_empty() {
            let mut next: Vec<(Complex64, usize)> = means
                .iter()
                .zip(&consumed)
                .filter(|(_, &c)| !c)
                .map(|(m, _)| *m)
                .collect();
            next.extend(merged);
            means = next;
        }
    }

    // Polish each cluster mean. A multiplicity-m root of P is a simple
    // zero of P^{(m-1)}, so Newton converges quadratically there and
    // removes the eps^(1/m) blur of the raw cluster. A polish that
    // leaves the cluster radius is discarded (malformed cluster; the
    // cross-check below will flag it).
    for (mean, count) in means.iter_mut() {
        if let Some(refined) = newton_on_derivative(p, *mean, *count - 1, tol_abs) {
            *mean = refined;
        }
    }

    // Snap near-real and near-zero cluster means, then enforce exact
    // conjugate symmetry (real coefficients guarantee it).
    for (m, _) in means.iter_mut() {
        if m.im.abs() <= tol_abs {
            m.im = 0.0;
        }
        if m.norm() <= tol_abs {
            *m = Complex64::new(0.0, 0.0);
        }
    }
    let len = means.len();
    for i in 0..len {
        if means[i].0.im <= 0.0 {
            continue;
        }
        let (mi, ci) = means[i];
        let partner = (0..len).find(|&j| {
            j != i
                && means[j].0.im < 0.0
                && means[j].1 == ci
                && (means[j].0.conj() - mi).norm() <= 2.0 * tol_abs
        });
        if let Some(j) = partner {
            let avg = (mi + means[j].0.conj()) / 2.0;
            means[i].0 = avg;
            means[j].0 = avg.conj();
        }
    }

    // Contract: the clustered residuals must meet the accuracy target.
    let rho = means.iter().map(|(m, _)| m.norm()).fold(0.0, f64::max);
    let bound = 1e-10 * rho.max(1.0).powi(k as i32);
    let clustered_residual = means
        .iter()
        .map(|(m, _)| p.eval_complex(*m).norm())
        .fold(0.0, f64::max);
    // NaN residuals must fail too, hence the negated form.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(clustered_residual <= bound) {
        return Err(Error::Convergence {
            iterations,
            residual: worst_residual.max(clustered_residual),
        });
    }

    // Multiplicity cross-check via low-order derivatives; a mismatch is
    // a diagnostic, not an error.
    let mut diagnostics = Vec::new();
    for &(m, count) in &means {
        for order in 0..=count {
            let d = p.derivative_m(order);
            let scale = 1.0
                + d.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.abs() * m.norm().max(1.0).powi(i as i32))
                    .sum::<f64>();
            let v = d.eval_complex(m).norm();
            if order < count && v > 1e-5 * scale {
                diagnostics.push(format!(
                    "cluster at {m}: |P^({order})| = {v:.3e} is large for multiplicity {count}"
                ));
            }
            if order == count && v < 1e-8 * scale {
                diagnostics.push(format!(
                    "cluster at {m}: |P^({count})| = {v:.3e} is suspiciously small"
                ));
            }
        }
    }

    let mut roots: Vec<EigenRoot> = means
        .into_iter()
        .map(|(value, multiplicity)| EigenRoot {
            value,
            multiplicity,
        })
        .collect();
    sort_roots(&mut roots);
    Ok(EigenStructure {
        roots,
        spectral_radius: rho,
        source_degree: k,
        diagnostics,
    })
}

/// Convenience wrapper with the default clustering tolerance.
pub fn find_roots_default(p: &Polynomial<f64>) -> Result<EigenStructure> {
    find_roots(p, DEFAULT_CLUSTER_TOL)
}

fn eval_complex(coeffs: &[f64], s: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * s + c;
    }
    acc
}

/// Greedy grouping of cluster means by distance to the running group
/// mean, in deterministic (sorted) order.
fn group_indices(means: &[(Complex64, usize)], radius: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..means.len()).collect();
    order.sort_by(|&a, &b| {
        means[a]
            .0
            .re
            .total_cmp(&means[b].0.re)
            .then(means[a].0.im.total_cmp(&means[b].0.im))
    });
    let mut groups: Vec<(Complex64, usize, Vec<usize>)> = Vec::new();
    for i in order {
        let (value, mult) = means[i];
        match groups
            .iter_mut()
            .find(|(sum, count, _)| (*sum / *count as f64 - value).norm() <= radius)
        {
            Some((sum, count, members)) => {
                *sum += value * mult as f64;
                *count += mult;
                members.push(i);
            }
            None => groups.push((value * mult as f64, mult, vec![i])),
        }
    }
    groups.into_iter().map(|(_, _, members)| members).collect()
}

/// Newton iteration on P^{(order)} from `start`; returns the refined
/// point only when the iteration converges, stays finite and lands
/// within `radius` of the start.
fn newton_on_derivative(
    p: &Polynomial<f64>,
    start: Complex64,
    order: usize,
    radius: f64,
) -> Option<Complex64> {
    let target = p.derivative_m(order);
    let slope = target.derivative();
    let mut z = start;
    for _ in 0..60 {
        let df = slope.eval_complex(z);
        if df.norm() == 0.0 {
            break;
        }
        let step = target.eval_complex(z) / df;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    ((z - start).norm() <= radius).then_some(z)
}

/// Accepts a multiplicity-m hypothesis at `candidate` only when Newton
/// on P^{(m-1)} converges nearby and every lower derivative evaluates
/// to no more than its rounding-noise floor there. Distinct roots that
/// merely sit close together fail these gates by many orders.
fn validate_multiple_root(
    p: &Polynomial<f64>,
    candidate: Complex64,
    m: usize,
    radius: f64,
) -> Option<Complex64> {
    let z = newton_on_derivative(p, candidate, m - 1, radius)?;
    for i in 0..m {
        let d = p.derivative_m(i);
        let gate = derivative_noise_gate(&d, z.norm());
        if d.eval_complex(z).norm() > gate {
            return None;
        }
    }
    // The m-th derivative must be clearly nonzero, otherwise the true
    // multiplicity is higher and a later ladder step will catch it.
    let dm = p.derivative_m(m);
    if dm.eval_complex(z).norm() <= derivative_noise_gate(&dm, z.norm()) {
        return None;
    }
    Some(z)
}

fn derivative_noise_gate(d: &crate::polynomial::DensePoly<f64>, r: f64) -> f64 {
    let mut majorant = 0.0;
    let mut pw = 1.0;
    for c in d.coeffs() {
        majorant += c.abs() * pw;
        pw *= r;
    }
    64.0 * (d.coeffs().len().max(1)) as f64 * f64::EPSILON * majorant + f64::MIN_POSITIVE
}

/// A root is accepted once |P(z)| falls below a small multiple of the
/// evaluation noise floor at that point.
fn residual_target(full: &[f64], r: f64) -> f64 {
    let mut majorant = 0.0;
    let mut pw = 1.0;
    for c in full {
        majorant += c.abs() * pw;
        pw *= r;
    }
    8.0 * full.len() as f64 * f64::EPSILON * majorant + f64::MIN_POSITIVE
}

/// How the roots pair up under conjugation; used by the summation
/// routines to keep real outputs exactly real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum PairRole {
    /// Real eigenvalue: contribute the term once.
    Real,
    /// Positive-imaginary member of an exact conjugate pair: contribute
    /// twice the real part.
    PairLead,
    /// Negative-imaginary member of an exact pair: already accounted for.
    PairSkip,
    /// No exact mirror present: contribute as a raw complex term.
    Lone,
}

pub(crate) fn pair_roles(values: &[Complex64]) -> Vec<PairRole> {
    let mut roles = vec![PairRole::Lone; values.len()];
    for (i, v) in values.iter().enumerate() {
        if v.im == 0.0 {
            roles[i] = PairRole::Real;
        }
    }
    for i in 0..values.len() {
        if values[i].im <= 0.0 || roles[i] != PairRole::Lone {
            continue;
        }
        if let Some(j) = (0..values.len())
            .find(|&j| roles[j] == PairRole::Lone && values[j] == values[i].conj())
        {
            roles[i] = PairRole::PairLead;
            roles[j] = PairRole::PairSkip;
        }
    }
    roles
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(low: &[i64]) -> Polynomial<f64> {
        Polynomial::from_i64_low(low).unwrap()
    }

    fn root_close(e: &EigenStructure, target: Complex64, mult: usize, tol: f64) -> bool {
        e.roots()
            .iter()
            .any(|r| (r.value - target).norm() <= tol && r.multiplicity == mult)
    }

    #[test]
    fn repeated_root_cubic() {
        let e = find_roots_default(&poly(&[-12, 16, -7])).unwrap();
        assert_eq!(e.roots().len(), 2);
        assert!(root_close(&e, Complex64::new(2.0, 0.0), 2, 1e-6));
        assert!(root_close(&e, Complex64::new(3.0, 0.0), 1, 1e-9));
        assert!((e.spectral_radius() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn imaginary_pair() {
        let e = find_roots_default(&poly(&[1, 0])).unwrap();
        assert_eq!(e.roots().len(), 2);
        assert!(root_close(&e, Complex64::new(0.0, 1.0), 1, 1e-12));
        assert!(root_close(&e, Complex64::new(0.0, -1.0), 1, 1e-12));
        assert!((e.spectral_radius() - 1.0).abs() < 1e-12);
        // exact conjugate symmetry after pairing
        assert_eq!(e.roots()[0].value.conj(), e.roots()[1].value);
    }

    #[test]
    fn quintic_matches_reference_digits() {
        let e = find_roots_default(&poly(&[-4, -15, -20, 10, -5])).unwrap();
        assert!(root_close(&e, Complex64::new(4.0, 0.0), 1, 1e-9));
        assert!(root_close(
            &e,
            Complex64::new(0.8090169944, 2.489898285),
            1,
            1e-8
        ));
        assert!((e.spectral_radius() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn golden_ratio_radius() {
        let e = find_roots_default(&poly(&[-1, -1])).unwrap();
        assert!((e.spectral_radius() - 1.618_033_988_7).abs() < 1e-9);
    }

    #[test]
    fn zero_root_participates() {
        let e = find_roots_default(&poly(&[0, 6, -5])).unwrap();
        // the tiny numeric root snaps to exactly zero
        assert!(e.roots().iter().any(|r| r.value == Complex64::new(0.0, 0.0)));
        assert!(root_close(&e, Complex64::new(3.0, 0.0), 1, 1e-9));
    }

    #[test]
    fn nilpotent_cluster() {
        let e = find_roots_default(&poly(&[0, 0, 0])).unwrap();
        assert_eq!(e.roots().len(), 1);
        assert_eq!(e.roots()[0].multiplicity, 3);
        assert_eq!(e.roots()[0].value, Complex64::new(0.0, 0.0));
        assert_eq!(e.spectral_radius(), 0.0);
    }

    #[test]
    fn dominant_sets() {
        let quartic = find_roots_default(&poly(&[54, -9, -15, 1])).unwrap();
        let dom = quartic.dominant_set(DEFAULT_DOM_TOL);
        assert_eq!(dom.len(), 2);
        assert!(dom
            .iter()
            .any(|r| (r.value - Complex64::new(-3.0, 0.0)).norm() < 1e-6 && r.multiplicity == 2));
        assert!(dom
            .iter()
            .any(|r| (r.value - Complex64::new(3.0, 0.0)).norm() < 1e-9 && r.multiplicity == 1));

        let cubic = find_roots_default(&poly(&[-12, 16, -7])).unwrap();
        let dom = cubic.dominant_set(DEFAULT_DOM_TOL);
        assert_eq!(dom.len(), 1);
        assert!((dom[0].value.re - 3.0).abs() < 1e-9);

        let gauss = find_roots_default(&poly(&[1, 0])).unwrap();
        assert_eq!(gauss.dominant_set(DEFAULT_DOM_TOL).len(), 2);
    }

    #[test]
    fn from_roots_validates() {
        let roots = vec![
            EigenRoot {
                value: Complex64::new(2.0, 0.0),
                multiplicity: 2,
            },
            EigenRoot {
                value: Complex64::new(3.0, 0.0),
                multiplicity: 1,
            },
        ];
        let e = EigenStructure::from_roots(roots.clone(), 3).unwrap();
        assert_eq!(e.spectral_radius(), 3.0);
        assert!(EigenStructure::from_roots(roots, 4).is_err());
    }

    #[test]
    fn integer_root_fixtures_cluster_exactly() {
        // (coeffs, expected (root, multiplicity)) with exact integer roots
        let cases: [(&[i64], &[(f64, usize)]); 3] = [
            (&[-12, 16, -7], &[(2.0, 2), (3.0, 1)]),
            (&[0, 6, -5], &[(0.0, 1), (2.0, 1), (3.0, 1)]),
            (&[54, -9, -15, 1], &[(2.0, 1), (3.0, 1), (-3.0, 2)]),
        ];
        for (low, expect) in cases {
            let e = find_roots_default(&poly(low)).unwrap();
            assert_eq!(e.roots().len(), expect.len(), "low = {low:?}");
            for &(r, m) in expect {
                assert!(
                    root_close(&e, Complex64::new(r, 0.0), m, 1e-6),
                    "root {r} mult {m} missing for {low:?}"
                );
            }
            assert!(e.diagnostics().is_empty(), "{:?}", e.diagnostics());
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random well-separated integer roots (real values and conjugate
        /// pairs), expanded to a monic polynomial.
        fn factored_poly() -> impl Strategy<Value = (Vec<(Complex64, usize)>, Polynomial<f64>)> {
            let real = (-4i64..=4, 1usize..=3).prop_map(|(r, m)| (Complex64::new(r as f64, 0.0), m));
            let pair = (-3i64..=3, 1i64..=3, 1usize..=2)
                .prop_map(|(re, im, m)| (Complex64::new(re as f64, im as f64), m));
            (
                proptest::collection::vec(real, 1..=3),
                proptest::collection::vec(pair, 0..=2),
            )
                .prop_map(|(reals, pairs)| {
                    let mut factors: Vec<(Complex64, usize)> = Vec::new();
                    for (v, m) in reals {
                        match factors.iter_mut().find(|(w, _)| *w == v) {
                            Some((_, mm)) => *mm += m,
                            None => factors.push((v, m)),
                        }
                    }
                    for (v, m) in pairs {
                        for cand in [v, v.conj()] {
                            match factors.iter_mut().find(|(w, _)| *w == cand) {
                                Some((_, mm)) => *mm += m,
                                None => factors.push((cand, m)),
                            }
                        }
                    }
                    // Trim to degree <= 8 by dropping whole factors.
                    loop {
                        let deg: usize = factors.iter().map(|(_, m)| m).sum();
                        if deg <= 8 {
                            break;
                        }
                        factors.pop();
                    }
                    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
                    for &(v, m) in &factors {
                        for _ in 0..m {
                            // multiply by (x - v)
                            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                            for (i, c) in coeffs.iter().enumerate() {
                                next[i + 1] += *c;
                                next[i] -= *c * v;
                            }
                            coeffs = next;
                        }
                    }
                    let k = coeffs.len() - 1;
                    let low: Vec<f64> = coeffs[..k].iter().map(|c| c.re).collect();
                    (factors, Polynomial::from_low_coeffs(low).unwrap())
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Expanding the clustered roots recovers the coefficients.
            #[test]
            fn reconstruction((_factors, p) in factored_poly()) {
                let e = find_roots_default(&p).unwrap();
                let mut coeffs = vec![Complex64::new(1.0, 0.0)];
                for r in e.roots() {
                    for _ in 0..r.multiplicity {
                        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                        for (i, c) in coeffs.iter().enumerate() {
                            next[i + 1] += *c;
                            next[i] -= *c * r.value;
                        }
                        coeffs = next;
                    }
                }
                let scale = p.low_coeffs().iter().fold(1.0f64, |m, a| m.max(a.abs()));
                for (j, a) in p.low_coeffs().iter().enumerate() {
                    prop_assert!(
                        (coeffs[j].re - a).abs() <= 1e-8 * scale && coeffs[j].im.abs() <= 1e-8 * scale,
                        "coefficient {j}: got {}, want {a}", coeffs[j]
                    );
                }
            }

            /// The dominant set is never empty and holds a max-modulus root.
            #[test]
            fn dominant_nonempty((_f, p) in factored_poly()) {
                let e = find_roots_default(&p).unwrap();
                let dom = e.dominant_set(DEFAULT_DOM_TOL);
                prop_assert!(!dom.is_empty());
                let rho = e.spectral_radius();
                prop_assert!(dom.iter().any(|r| (r.value.norm() - rho).abs() <= 1e-12 * rho.max(1.0)));
            }
        }
    }
}
