//! Two spatial dimensions: chiral a/c ladders, angular momentum, spin-orbit
//! coupling and the two chiral copies of the ladder algebra.
//!
//! The chiral families multiply the j=1 operators by the projectors
//! P± = (1/2)Id ± beta S0 from the right; the equivalent two-mode
//! combinations (1/2)X_1 -+ zeta (i/2) X_2 are asserted in tests.

use super::{Foundation, Grading, OperatorRegistry, OscillatorModel};
use crate::error::Result;
use crate::fock::embed_spinor;
use crate::linalg::{add, eye, im, matmul, re, scale, sub, SpMat};

pub(super) fn build(model: &OscillatorModel) -> Result<OperatorRegistry> {
    let f = Foundation::new(model)?;
    let mut reg = OperatorRegistry::new(model.clone());
    let (m, w) = (model.mass, model.omega);
    let dim = model.space_dim();

    let h = f.hamiltonian(model);
    let hsq = matmul(&h, &h);

    // spin, orbital angular momentum, spin-orbit coupling
    let s0_spinor = scale(
        &matmul(&model.rep.generators[0], &model.rep.generators[1]),
        im(-0.5),
    );
    let s0 = embed_spinor(&s0_spinor, 2, model.cutoff);
    let l0 = sub(&matmul(&f.x[0], &f.p[1]), &matmul(&f.x[1], &f.p[0]));
    let bs0 = matmul(&f.beta, &s0);
    let cls = sub(
        &scale(&matmul(&matmul(&f.beta, &l0), &s0), re(-2.0)),
        &scale(&f.beta, re(0.5)),
    );
    let j_total = add(&l0, &s0);
    let sc = scale(&f.beta, re(-0.5));

    let mut n_op = super::sum_all(&[
        matmul(&f.b_plus[0], &f.b_minus[0]),
        matmul(&f.b_plus[1], &f.b_minus[1]),
        scale(&matmul(&f.s_plus[0], &f.s_minus[0]), re(0.5)),
        scale(&matmul(&f.s_plus[1], &f.s_minus[1]), re(0.5)),
    ]);
    n_op = crate::linalg::prune(&n_op);

    let mut hsch = SpMat::zero((dim, dim));
    for j in 0..2 {
        hsch = add(&hsch, &scale(&matmul(&f.p[j], &f.p[j]), re(0.5 / m)));
        hsch = add(&hsch, &scale(&matmul(&f.x[j], &f.x[j]), re(0.5 * m * w * w)));
    }

    // a_j-/+, c_j-/+ with the cyclic spinor factor beta alpha_j alpha_{j+1}
    let inv_sqrt2 = re(1.0 / 2.0_f64.sqrt());
    let mut a_minus = Vec::new();
    let mut a_plus = Vec::new();
    let mut c_minus = Vec::new();
    let mut c_plus = Vec::new();
    for j in 0..2 {
        let jn = (j + 1) % 2;
        let factor = matmul(&matmul(&f.beta, &f.alphas[j]), &f.alphas[jn]);
        let fb_minus = matmul(&factor, &f.b_minus[jn]);
        let fb_plus = matmul(&factor, &f.b_plus[jn]);
        a_minus.push(scale(&add(&f.b_minus[j], &fb_minus), inv_sqrt2));
        a_plus.push(scale(&sub(&f.b_plus[j], &fb_plus), inv_sqrt2));
        c_minus.push(scale(&sub(&f.b_minus[j], &fb_minus), inv_sqrt2));
        c_plus.push(scale(&add(&f.b_plus[j], &fb_plus), inv_sqrt2));
    }

    reg.add_hom("Id", eye(dim), "00", 0);
    reg.add_hom("beta", f.beta.clone(), "00", 0);
    reg.add_hom("Sc", sc, "00", 0);
    reg.add_hom("Hsch", hsch.clone(), "00", 1);
    reg.add_hom("N", n_op, "00", 1);
    reg.add_hom("L0", l0.clone(), "00", 1);
    reg.add_hom("S0", s0.clone(), "00", 0);
    reg.add_hom("bS0", bs0.clone(), "00", 0);
    reg.add_hom("CLS", cls.clone(), "00", 1);
    reg.add("J", j_total, None, 1);
    for j in 0..2 {
        let tag = j + 1;
        reg.add(&format!("b{tag}-"), f.b_minus[j].clone(), None, 0);
        reg.add(&format!("b{tag}+"), f.b_plus[j].clone(), None, 1);
        reg.add_hom(&format!("s{tag}-"), f.s_minus[j].clone(), "11", 0);
        reg.add_hom(&format!("s{tag}+"), f.s_plus[j].clone(), "11", 0);
        reg.add_hom(&format!("a{tag}-"), a_minus[j].clone(), "10", 0);
        reg.add_hom(&format!("a{tag}+"), a_plus[j].clone(), "10", 1);
        reg.add_hom(&format!("c{tag}-"), c_minus[j].clone(), "10", 0);
        reg.add_hom(&format!("c{tag}+"), c_plus[j].clone(), "10", 1);
    }
    reg.add("H", h, Some(Grading::Inhomogeneous), 1);
    reg.add("Hsq", hsq, Some(Grading::Inhomogeneous), 2);

    // chiral halves
    let half = scale(&eye(dim), re(0.5));
    let proj = [add(&half, &bs0), sub(&half, &bs0)];
    let chi_name = ["p", "m"];
    for (chi, p_chi) in proj.iter().enumerate() {
        let suffix = chi_name[chi];
        let sign = if chi == 0 { 1.0 } else { -1.0 };
        let h_chi = matmul(&hsch, p_chi);
        let cls_chi = super::sum_all(&[
            scale(&cls, re(0.5)),
            scale(&f.beta, re(0.25)),
            scale(&l0, re(-0.5 * sign)),
        ]);
        let sc_chi = sub(
            &scale(&f.beta, re(-0.25)),
            &scale(&s0, re(0.5 * sign)),
        );
        reg.add_hom(&format!("H_{suffix}"), h_chi, "00", 1);
        reg.add_hom(&format!("CLS_{suffix}"), cls_chi, "00", 1);
        reg.add_hom(&format!("Sc_{suffix}"), sc_chi, "00", 0);

        let chiral = |op: &SpMat| matmul(op, p_chi);
        let sm = chiral(&f.s_minus[0]);
        let sp = chiral(&f.s_plus[0]);
        let am = chiral(&a_minus[0]);
        let ap = chiral(&a_plus[0]);
        let cm = chiral(&c_minus[0]);
        let cp = chiral(&c_plus[0]);
        reg.add_hom(&format!("s-_{suffix}"), sm.clone(), "11", 0);
        reg.add_hom(&format!("s+_{suffix}"), sp.clone(), "11", 0);
        reg.add_hom(&format!("a-_{suffix}"), am.clone(), "10", 0);
        reg.add_hom(&format!("a+_{suffix}"), ap.clone(), "10", 1);
        reg.add_hom(&format!("c-_{suffix}"), cm.clone(), "10", 0);
        reg.add_hom(&format!("c+_{suffix}"), cp.clone(), "10", 1);
        // 00-sector squares and a-c products
        for (name, x, y, raise) in [
            ("a-^2", &am, &am, 0),
            ("a+^2", &ap, &ap, 2),
            ("c-^2", &cm, &cm, 0),
            ("c+^2", &cp, &cp, 2),
            ("a-c-", &am, &cm, 0),
            ("a+c+", &ap, &cp, 2),
            ("a-c+", &am, &cp, 1),
            ("a+c-", &ap, &cm, 1),
        ] {
            reg.add_hom(&format!("{name}_{suffix}"), matmul(x, y), "00", raise);
        }
        // 01-sector ladder x fermion products
        for (name, x, y, raise) in [
            ("a-s-", &am, &sm, 0),
            ("a+s+", &ap, &sp, 1),
            ("a-s+", &am, &sp, 0),
            ("a+s-", &ap, &sm, 1),
            ("c-s-", &cm, &sm, 0),
            ("c+s+", &cp, &sp, 1),
            ("c-s+", &cm, &sp, 0),
            ("c+s-", &cp, &sm, 1),
        ] {
            reg.add_hom(&format!("{name}_{suffix}"), matmul(x, y), "01", raise);
        }
    }
    Ok(reg)
}

#[cfg(test)]
mod tests {
    use super::super::{build_registry, OscillatorModel};
    use crate::linalg::{add, fro_norm, im, matmul, re, scale, sub};

    /// Chiral operators agree with the explicit two-mode combinations
    /// (1/2) X^z_1 -+ z (i/2) X^z_2 (a and s; c flips the imaginary sign).
    #[test]
    fn chiral_two_forms_agree() {
        let model = OscillatorModel::new(2, 1.0, 1.0, 4).unwrap();
        let reg = build_registry(&model).unwrap();
        let g = |l: &str| reg.matrix(l).unwrap();
        for (zeta, fam, flip) in [
            (-1.0, "s", 1.0),
            (1.0, "s", 1.0),
            (-1.0, "a", 1.0),
            (1.0, "a", 1.0),
            (-1.0, "c", -1.0),
            (1.0, "c", -1.0),
        ] {
            let z = if zeta < 0.0 { "-" } else { "+" };
            for (chi, sgn) in [("p", 1.0), ("m", -1.0)] {
                let direct = add(
                    &scale(g(&format!("{fam}1{z}")), re(0.5)),
                    &scale(g(&format!("{fam}2{z}")), im(-0.5 * zeta * sgn * flip)),
                );
                let r = fro_norm(&sub(g(&format!("{fam}{z}_{chi}")), &direct));
                assert!(r < 1e-13, "{fam}{z}_{chi}: {r}");
            }
        }
    }

    #[test]
    fn hp_is_half_plus_projected_hsch() {
        let model = OscillatorModel::new(2, 1.0, 1.0, 4).unwrap();
        let reg = build_registry(&model).unwrap();
        let hsch = reg.matrix("Hsch").unwrap();
        let bs0 = reg.matrix("bS0").unwrap();
        let expect = add(&scale(hsch, re(0.5)), &matmul(hsch, bs0));
        let r = fro_norm(&sub(reg.matrix("H_p").unwrap(), &expect));
        assert!(r < 1e-13);
    }
}
