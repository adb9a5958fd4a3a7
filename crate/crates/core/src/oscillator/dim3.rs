//! Three spatial dimensions: angular momentum towers, spin-projected
//! ladders, the T± climbing operators and the coordinate-component
//! operators of the Z2^3 algebra.

use super::{Foundation, Grading, OperatorRegistry, OscillatorModel};
use crate::error::Result;
use crate::fock::embed_spinor;
use crate::linalg::{add, eye, im, matmul, re, scale, sub, SpMat};

fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub(super) fn build(model: &OscillatorModel) -> Result<OperatorRegistry> {
    let f = Foundation::new(model)?;
    let mut reg = OperatorRegistry::new(model.clone());
    let (m, w) = (model.mass, model.omega);
    let s2mw = model.sqrt_2mw();
    let dim = model.space_dim();

    let h = f.hamiltonian(model);
    let hsq = matmul(&h, &h);

    // spin S_i = -(i/2) alpha_j alpha_k (cyclic), embedded
    let spin: Vec<SpMat> = [(2usize, 3usize), (3, 1), (1, 2)]
        .iter()
        .map(|&(a, b)| {
            let s = scale(
                &matmul(&model.rep.generators[a - 1], &model.rep.generators[b - 1]),
                im(-0.5),
            );
            embed_spinor(&s, 3, model.cutoff)
        })
        .collect();
    // orbital L_i = eps_ijk x_j p_k
    let orbital: Vec<SpMat> = (0..3)
        .map(|i| {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            sub(&matmul(&f.x[j], &f.p[k]), &matmul(&f.x[k], &f.p[j]))
        })
        .collect();
    let total: Vec<SpMat> = (0..3).map(|i| add(&orbital[i], &spin[i])).collect();

    let square = |v: &[SpMat]| super::sum_all(&v.iter().map(|x| matmul(x, x)).collect::<Vec<_>>());
    let l_sq = square(&orbital);
    let s_sq = square(&spin);
    let j_sq = square(&total);

    let ladder = |v: &[SpMat]| {
        (
            add(&v[0], &scale(&v[1], im(1.0))),  // X+ = X1 + i X2
            sub(&v[0], &scale(&v[1], im(1.0))),  // X- = X1 - i X2
        )
    };
    let (l_up, l_dn) = ladder(&orbital);
    let (s_up, s_dn) = ladder(&spin);
    let (j_up, j_dn) = ladder(&total);

    // N = B+.B- + (1/3) S+.S-
    let mut n_op = SpMat::zero((dim, dim));
    for j in 0..3 {
        n_op = add(&n_op, &matmul(&f.b_plus[j], &f.b_minus[j]));
        n_op = add(
            &n_op,
            &scale(&matmul(&f.s_plus[j], &f.s_minus[j]), re(1.0 / 3.0)),
        );
    }
    n_op = crate::linalg::prune(&n_op);

    let ls = super::sum_all(
        &(0..3)
            .map(|i| matmul(&orbital[i], &spin[i]))
            .collect::<Vec<_>>(),
    );
    let cls = sub(&scale(&matmul(&f.beta, &ls), re(-2.0)), &f.beta);
    let sc = scale(&f.beta, re(-0.5));

    // spin-projected ladders
    let project = |v: &[SpMat], c: f64| {
        super::sum_all(
            &(0..3)
                .map(|j| scale(&matmul(&v[j], &spin[j]), re(c)))
                .collect::<Vec<_>>(),
        )
    };
    let bs_minus = project(&f.b_minus, 2.0);
    let bs_plus = project(&f.b_plus, 2.0);
    let ss_minus = project(&f.s_minus, 2.0 / 3.0);
    let ss_plus = project(&f.s_plus, 2.0 / 3.0);
    let bs_minus_sq = matmul(&bs_minus, &bs_minus);
    let bs_plus_sq = matmul(&bs_plus, &bs_plus);
    let t_plus = add(&matmul(&bs_plus_sq, &ss_minus), &ss_plus);
    let t_minus = add(&matmul(&bs_minus_sq, &ss_plus), &ss_minus);

    // underlined H^2 = 2mw(N - C_LS + Id) + m^2 Id, the braid partner
    let hsq_under = super::sum_all(&[
        scale(&n_op, re(2.0 * m * w)),
        scale(&cls, re(-2.0 * m * w)),
        scale(&eye(dim), re(2.0 * m * w + m * m)),
    ]);

    reg.add_hom("Id", eye(dim), "00", 0);
    reg.add_hom("beta", f.beta.clone(), "00", 0);
    reg.add_hom("N-Sc", sub(&n_op, &sc), "00", 1);
    reg.add_hom("N+Id", add(&n_op, &eye(dim)), "00", 1);
    reg.add_hom("N", n_op, "00", 1);
    reg.add_hom("CLS", cls, "11", 1);
    reg.add_hom("Sc", sc, "00", 0);
    reg.add_hom("Bs-", bs_minus.clone(), "01", 0);
    reg.add_hom("Bs+", bs_plus.clone(), "01", 1);
    reg.add_hom("Ss-", ss_minus.clone(), "10", 0);
    reg.add_hom("Ss+", ss_plus.clone(), "10", 0);
    reg.add_hom("Bs-^2", bs_minus_sq, "00", 0);
    reg.add_hom("Bs+^2", bs_plus_sq, "00", 2);
    reg.add_hom("T-", t_minus, "10", 0);
    reg.add_hom("T+", t_plus, "10", 2);
    reg.add("H", h, Some(Grading::Inhomogeneous), 1);
    reg.add("Hsq", hsq, Some(Grading::Inhomogeneous), 2);
    reg.add("Hsqu", hsq_under, Some(Grading::Inhomogeneous), 1);

    for i in 0..3 {
        let tag = i + 1;
        reg.add(&format!("b{tag}-"), f.b_minus[i].clone(), None, 0);
        reg.add(&format!("b{tag}+"), f.b_plus[i].clone(), None, 1);
        reg.add(&format!("s{tag}-"), f.s_minus[i].clone(), None, 0);
        reg.add(&format!("s{tag}+"), f.s_plus[i].clone(), None, 0);
        reg.add(&format!("S{tag}"), spin[i].clone(), None, 0);
        reg.add(&format!("L{tag}"), orbital[i].clone(), None, 1);
        reg.add(&format!("J{tag}"), total[i].clone(), None, 1);
    }
    reg.add("L+", l_up, None, 1);
    reg.add("L-", l_dn, None, 1);
    reg.add("S+", s_up, None, 0);
    reg.add("S-", s_dn, None, 0);
    reg.add("J+", j_up, None, 1);
    reg.add("J-", j_dn, None, 1);
    reg.add("L^2", l_sq, None, 2);
    reg.add("S^2", s_sq, None, 0);
    reg.add("J^2", j_sq, None, 2);

    // coordinate components for the Z2^3 algebra
    let comp_degree = ["110", "101", "011"];
    let h_degree = ["001", "010", "100"];
    let mut h_comp = Vec::new();
    for j in 0..3 {
        let tag = j + 1;
        let hj = scale(
            &add(
                &matmul(&f.b_plus[j], &f.s_minus[j]),
                &matmul(&f.b_minus[j], &f.s_plus[j]),
            ),
            re(s2mw),
        );
        let nj = add(
            &matmul(&f.b_plus[j], &f.b_minus[j]),
            &matmul(&f.s_plus[j], &f.s_minus[j]),
        );
        reg.add_hom(&format!("H_{tag}"), hj.clone(), h_degree[j], 1);
        reg.add_hom(&format!("bH_{tag}"), matmul(&f.beta, &hj), h_degree[j], 1);
        reg.add_hom(&format!("N_{tag}"), nj, "000", 1);
        reg.add_hom(
            &format!("Bs{tag}-"),
            scale(&matmul(&f.b_minus[j], &spin[j]), re(2.0)),
            comp_degree[j],
            0,
        );
        reg.add_hom(
            &format!("Bs{tag}+"),
            scale(&matmul(&f.b_plus[j], &spin[j]), re(2.0)),
            comp_degree[j],
            1,
        );
        reg.add_hom(
            &format!("L{tag}S{tag}"),
            matmul(&orbital[j], &spin[j]),
            comp_degree[j],
            1,
        );
        h_comp.push(hj);
    }
    for j in 0..3 {
        let mut acc = SpMat::zero((dim, dim));
        for k in 0..3 {
            for l in 0..3 {
                let e = epsilon(j, k, l);
                if e != 0.0 {
                    acc = add(&acc, &scale(&matmul(&h_comp[k], &h_comp[l]), re(e)));
                }
            }
        }
        reg.add_hom(
            &format!("HxH{}", j + 1),
            scale(&acc, re(1.0 / (4.0 * m * w))),
            comp_degree[j],
            1,
        );
    }
    Ok(reg)
}

#[cfg(test)]
mod tests {
    use super::super::{build_registry, OscillatorModel};
    use crate::fock::interior_projector;
    use crate::linalg::{combo_norms, fro_norm, matmul, re, sub, ONE};
    use once_cell::sync::Lazy;

    static REG: Lazy<super::super::OperatorRegistry> = Lazy::new(|| {
        let model = OscillatorModel::new(3, 1.0, 1.0, 5).unwrap();
        build_registry(&model).unwrap()
    });

    #[test]
    fn spin_squares_to_three_quarters() {
        let s_sq = REG.matrix("S^2").unwrap();
        let want = crate::linalg::scale(REG.matrix("Id").unwrap(), re(0.75));
        assert!(fro_norm(&sub(s_sq, &want)) < 1e-12);
    }

    #[test]
    fn number_operator_commutes_with_h() {
        let p = interior_projector(2, 3, REG.model.cutoff, 4).unwrap();
        let c = crate::linalg::commutator(REG.matrix("H").unwrap(), REG.matrix("N").unwrap());
        let (masked, _) = combo_norms(&[(ONE, &c)], Some(&p.mask));
        assert!(masked < 1e-12);
    }

    /// HxH_j agrees with the alternative normal-ordered form
    /// i sum_{k,l} eps_{jkl}^2 b+_k b-_l S_j.
    #[test]
    fn hxh_alternative_form() {
        let p = interior_projector(2, 3, REG.model.cutoff, 4).unwrap();
        for j in 0..3usize {
            let mut alt = crate::linalg::zeros(REG.model.space_dim());
            for k in 0..3usize {
                for l in 0..3usize {
                    if super::epsilon(j, k, l) != 0.0 {
                        let term = matmul(
                            &matmul(
                                REG.matrix(&format!("b{}+", k + 1)).unwrap(),
                                REG.matrix(&format!("b{}-", l + 1)).unwrap(),
                            ),
                            REG.matrix(&format!("S{}", j + 1)).unwrap(),
                        );
                        alt = crate::linalg::add(&alt, &crate::linalg::scale(&term, crate::linalg::I));
                    }
                }
            }
            let d = sub(REG.matrix(&format!("HxH{}", j + 1)).unwrap(), &alt);
            let (masked, _) = combo_norms(&[(ONE, &d)], Some(&p.mask));
            assert!(masked < 1e-12, "HxH{}", j + 1);
        }
    }

    #[test]
    fn t_plus_squares_to_bs_plus_squared() {
        let p = interior_projector(4, 3, REG.model.cutoff, 4).unwrap();
        let tp = REG.matrix("T+").unwrap();
        let d = sub(&matmul(tp, tp), REG.matrix("Bs+^2").unwrap());
        let (masked, _) = combo_norms(&[(ONE, &d)], Some(&p.mask));
        assert!(masked < 1e-12);
    }
}
