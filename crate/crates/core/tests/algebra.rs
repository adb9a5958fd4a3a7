//! Cross-module sweeps: every builtin algebra presentation against its
//! registry at reduced cutoffs, plus the negative control that a corrupted
//! grading is caught.

use dirac_oscillator::graded::{
    builtin_specs, colour_bracket, colour_jacobi_sweep, specs, verify_algebra, verify_relations,
    Degree,
};
use dirac_oscillator::oscillator::{build_registry, OperatorRegistry, OscillatorModel};
use dirac_oscillator::{C64, SpMat};
use once_cell::sync::Lazy;

fn registry(dim: usize, n_max: usize) -> OperatorRegistry {
    let model = OscillatorModel::new(dim, 1.0, 1.0, n_max).unwrap();
    build_registry(&model).unwrap()
}

static REG1: Lazy<OperatorRegistry> = Lazy::new(|| registry(1, 12));
static REG2: Lazy<OperatorRegistry> = Lazy::new(|| registry(2, 6));
static REG3: Lazy<OperatorRegistry> = Lazy::new(|| registry(3, 5));

fn reg_for(dim: usize) -> &'static OperatorRegistry {
    match dim {
        1 => &REG1,
        2 => &REG2,
        _ => &REG3,
    }
}

fn failing(report: &dirac_oscillator::report::VerificationReport) -> String {
    report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} -> {:.3e}", c.id, c.residual))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn every_builtin_algebra_verifies() {
    for spec in builtin_specs() {
        let report = verify_algebra(&spec, reg_for(spec.dim), 1e-10).unwrap();
        assert!(report.passed, "{} failed:\n{}", spec.name, failing(&report));
    }
}

#[test]
fn every_builtin_algebra_satisfies_jacobi() {
    for spec in builtin_specs() {
        let report = colour_jacobi_sweep(&spec, reg_for(spec.dim), 1e-10).unwrap();
        assert!(
            report.passed,
            "{} jacobi failed, max residual {:.3e}",
            spec.name, report.max_residual
        );
    }
}

#[test]
fn jacobi_triples_with_identity_are_exactly_zero() {
    let spec = specs::spec_by_name("pso(3|2)").unwrap();
    let report = colour_jacobi_sweep(&spec, &REG1, 1e-10).unwrap();
    let id_triples: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.id.contains("Id"))
        .collect();
    assert!(!id_triples.is_empty());
    for check in id_triples {
        assert_eq!(check.residual_unprojected, 0.0, "{}", check.id);
    }
}

/// Swapping two sector labels must break the table (the bracket types flip).
#[test]
fn swapped_degrees_fail_verification() {
    let mut spec = specs::spec_by_name("pso(3|2)").unwrap();
    for (label, degree) in spec.generators.iter_mut() {
        if label == "b-" || label == "b+" {
            *degree = Degree::parse("11").unwrap();
        } else if label == "s-" || label == "s+" {
            *degree = Degree::parse("10").unwrap();
        }
    }
    match verify_algebra(&spec, &REG1, 1e-10) {
        Ok(report) => assert!(!report.passed, "corrupted grading passed"),
        // the bracket-type consistency check may trip first
        Err(dirac_oscillator::Error::BracketTypeMismatch { .. }) => {}
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn ladder_relation_sets_hold() {
    for dim in 2..=3usize {
        let relations = specs::ladder_relations(dim);
        assert!(!relations.is_empty());
        let report =
            verify_relations(&format!("dim{dim}-ladders"), &relations, &[], reg_for(dim), 1e-10)
                .unwrap();
        assert!(report.passed, "dim {dim}:\n{}", failing(&report));
    }
}

#[test]
fn colour_bracket_uses_canonical_degrees() {
    // 3D: Ss∓ carry degree 10; <(1,0),(1,0)> = 1, so the colour bracket is
    // the anticommutator and equals the identity
    let x = REG3.get("Ss-").unwrap();
    let y = REG3.get("Ss+").unwrap();
    let b = colour_bracket(x, y).unwrap();
    let mut diff = 0.0f64;
    for (v, (i, j)) in b.iter() {
        let want = if i == j { 1.0 } else { 0.0 };
        diff = diff.max((*v - C64::new(want, 0.0)).norm());
    }
    assert!(diff < 1e-12);
    // an operator with no homogeneous tag is rejected
    let h = REG3.get("H").unwrap();
    assert!(colour_bracket(h, y).is_err());
    // self-bracket with eps = +1 vanishes identically
    let n = REG3.get("N").unwrap();
    let self_bracket = colour_bracket(n, n).unwrap();
    assert!(self_bracket.iter().all(|(v, _)| v.norm() == 0.0));
}

fn inner(a: &SpMat, b: &SpMat) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (v, (i, j)) in a.iter() {
        if let Some(w) = b.get(i, j) {
            acc += v.conj() * *w;
        }
    }
    acc
}

/// Rank of a Hermitian PSD Gram matrix by pivoted Cholesky.
fn gram_rank(gram: &[Vec<C64>]) -> usize {
    let n = gram.len();
    let mut g: Vec<Vec<C64>> = gram.to_vec();
    let scale = (0..n).map(|i| g[i][i].re).fold(0.0f64, f64::max);
    let mut rank = 0;
    for k in 0..n {
        // pivot on the largest remaining diagonal
        let (p, pivot) = (k..n)
            .map(|i| (i, g[i][i].re))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if pivot <= 1e-20 * scale {
            break;
        }
        g.swap(k, p);
        for row in &mut g {
            row.swap(k, p);
        }
        rank += 1;
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let update = g[i][k] * g[k][j] / C64::new(g[k][k].re, 0.0);
                g[i][j] -= update;
            }
        }
        for i in (k + 1)..n {
            g[i][k] = C64::new(0.0, 0.0);
            g[k][i] = C64::new(0.0, 0.0);
        }
    }
    rank
}

/// The infinite-tower witness: x1 = Bs-, alternately bracketed with
/// {Bs+,Ss-} and {Bs-,Ss+}, stays linearly independent (at least five
/// operators at desk scale).
#[test]
fn bracket_tower_grows_without_bound() {
    let g = |l: &str| REG3.matrix(l).unwrap();
    let acomm = |a: &SpMat, b: &SpMat| &(a * b) + &(b * a);
    let comm = |a: &SpMat, b: &SpMat| &(a * b) + &(b * a).map(|v| -v);
    let plus_minus = acomm(g("Bs+"), g("Ss-"));
    let minus_plus = acomm(g("Bs-"), g("Ss+"));
    let mut xs: Vec<SpMat> = vec![g("Bs-").clone()];
    for k in 1..5 {
        let outer = if k % 2 == 1 { &plus_minus } else { &minus_plus };
        xs.push(comm(outer, xs.last().unwrap()));
    }
    let n = xs.len();
    let mut gram = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = inner(&xs[i], &xs[j]);
        }
    }
    let rank = gram_rank(&gram);
    assert!(rank >= 5, "tower rank {rank}");
}

/// Degree additivity: products named in the sector tables carry the sum of
/// their factors' degrees.
#[test]
fn named_products_have_additive_degrees() {
    use dirac_oscillator::oscillator::Grading;
    let deg = |reg: &OperatorRegistry, label: &str| -> Degree {
        match &reg.get(label).unwrap().grading {
            Some(Grading::Homogeneous(d)) => d.clone(),
            other => panic!("{label} should be homogeneous, got {other:?}"),
        }
    };
    for (a, b, prod) in [("b-", "s-", "b-s-"), ("b+", "s+", "b+s+")] {
        let sum = deg(&REG1, a).add(&deg(&REG1, b)).unwrap();
        assert_eq!(sum, deg(&REG1, prod), "{prod}");
    }
    let sum = deg(&REG3, "Bs+").add(&deg(&REG3, "Bs+")).unwrap();
    assert_eq!(sum, deg(&REG3, "Bs+^2"));
}

/// Parastatistics audits at reduced cutoffs in every dimension.
#[test]
fn parastat_audit_matches_expected_matrix() {
    use dirac_oscillator::oscillator::parastatistics_audit_all;
    for dim in 1..=3usize {
        let report = parastatistics_audit_all(reg_for(dim)).unwrap();
        assert!(report.passed, "dim {dim}:\n{}", report.to_text());
    }
}
