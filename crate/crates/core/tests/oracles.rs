use coxeter_pd::coxeter::{enumerate_group, CoxeterMatrix, CoxeterSystem, DEFAULT_CAP};
use coxeter_pd::dihedral::colour_radial_triangle;
use coxeter_pd::pairpart::{pairpartitions, SetPartition};
use coxeter_pd::pd::{gram_f64, GroupFunction};
use coxeter_pd::rademacher::{moment_feasible_pm1, MomentVerdict};
use coxeter_pd::rational::{pow, rat};

/// Every set partition of `{1..m}` as a restricted growth string.
fn set_partitions(m: usize) -> Vec<SetPartition> {
    fn rec(i: usize, m: usize, labels: &mut Vec<usize>, max: usize, out: &mut Vec<SetPartition>) {
        if i == m {
            out.push(SetPartition::from_labels(labels));
            return;
        }
        for l in 0..=max {
            labels.push(l);
            rec(i + 1, m, labels, max.max(l + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::new(), 0, &mut out);
    out
}

#[test]
fn phi_is_the_finest_noncrossing_coarsening() {
    for n in 1..=5 {
        let nc: Vec<SetPartition> = set_partitions(2 * n).into_iter().filter(|p| p.is_noncrossing()).collect();
        for p in pairpartitions(n) {
            let fine = p.as_set_partition();
            let phi = p.phi();
            let above: Vec<&SetPartition> = nc.iter().filter(|q| fine.refines(q)).collect();
            assert!(above.contains(&&phi), "{p}");
            assert!(above.iter().all(|q| phi.refines(q)), "{p}");
        }
    }
}

#[test]
fn triangle_vertices_sit_on_the_boundary() {
    // order 8: at each vertex the Gram on the whole group is singular and PSD
    let g = enumerate_group(&CoxeterSystem::new(CoxeterMatrix::dihedral(4)).unwrap(), DEFAULT_CAP).unwrap();
    for (p, r) in colour_radial_triangle(4).numeric {
        let phi = |p: f64, r: f64| {
            let to = |x: f64| rat((x * 1e12).round() as i64, 1_000_000_000_000);
            GroupFunction::DihedralPQR { p: to(p), q: to(p), r: to(r) }
        };
        let m = gram_f64(&g, &phi(p, r)).unwrap();
        let min = m.symmetric_eigen().eigenvalues.min();
        assert!(min.abs() <= 1e-9, "vertex ({p}, {r}): min eigenvalue {min}");
    }
}

#[test]
fn interior_moment_sequence_is_fitted_closely() {
    // half the mass at 1/3, half at -3/5
    let profile: Vec<_> = (0..=12).map(|k| (pow(&rat(1, 3), k) + pow(&rat(-3, 5), k)) / rat(2, 1)).collect();
    match moment_feasible_pm1(&profile).unwrap() {
        MomentVerdict::Feasible { residual, .. } => assert!(residual <= 1e-9, "residual {residual}"),
        other => panic!("expected Feasible, got {other:?}"),
    }
}
