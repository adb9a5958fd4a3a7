//! One spatial dimension: the boson/fermion ladder pair, the shifted
//! Hamiltonian and the sector products of the Z2xZ2 table.

use super::{Foundation, Grading, OperatorRegistry, OscillatorModel};
use crate::error::Result;
use crate::linalg::{add, eye, matmul, re, scale, sub};

pub(super) fn build(model: &OscillatorModel) -> Result<OperatorRegistry> {
    let f = Foundation::new(model)?;
    let mut reg = OperatorRegistry::new(model.clone());
    let m = model.mass;
    let dim = model.space_dim();

    let h = f.hamiltonian(model);
    let hsq = matmul(&h, &h);
    let h0 = sub(&h, &scale(&f.beta, re(m)));
    let sc = scale(&f.beta, re(-0.5));
    let hsch = add(
        &scale(&matmul(&f.p[0], &f.p[0]), re(0.5 / m)),
        &scale(&matmul(&f.x[0], &f.x[0]), re(0.5 * m * model.omega * model.omega)),
    );

    let (bm, bp) = (&f.b_minus[0], &f.b_plus[0]);
    let (sm, sp) = (&f.s_minus[0], &f.s_plus[0]);

    reg.add_hom("Id", eye(dim), "00", 0);
    reg.add_hom("beta", f.beta.clone(), "00", 0);
    reg.add_hom("Hsch", hsch, "00", 1);
    reg.add_hom("Sc", sc, "00", 0);
    reg.add_hom("b-", bm.clone(), "10", 0);
    reg.add_hom("b+", bp.clone(), "10", 1);
    reg.add_hom("s-", sm.clone(), "11", 0);
    reg.add_hom("s+", sp.clone(), "11", 0);
    reg.add_hom("b-^2", matmul(bm, bm), "00", 0);
    reg.add_hom("b+^2", matmul(bp, bp), "00", 2);
    reg.add_hom("b-s-", matmul(bm, sm), "01", 0);
    reg.add_hom("b+s+", matmul(bp, sp), "01", 1);
    reg.add_hom("b-s+", matmul(bm, sp), "01", 0);
    reg.add_hom("b+s-", matmul(bp, sm), "01", 1);
    reg.add_hom("H0", h0, "01", 1);
    reg.add("H", h, Some(Grading::Inhomogeneous), 1);
    reg.add("Hsq", hsq, Some(Grading::Inhomogeneous), 2);
    Ok(reg)
}

#[cfg(test)]
mod tests {
    use super::super::{build_registry, OscillatorModel};
    use crate::linalg::{re, sub, to_dense, ZERO};

    /// The s-ladders take the strict block-triangular form of the Dirac
    /// representation (the displayed blocks up to the definitional -i).
    #[test]
    fn s_ladders_shift_between_components() {
        let model = OscillatorModel::new(1, 1.0, 1.0, 1).unwrap();
        let reg = build_registry(&model).unwrap();
        let sm = to_dense(reg.matrix("s-").unwrap());
        let sp = to_dense(reg.matrix("s+").unwrap());
        let modes = 2;
        for i in 0..4 * modes {
            for j in 0..4 * modes {
                let (si, sj) = (i / modes, j / modes);
                // s- maps small to large component only: rows in upper block
                if si >= 2 || sj < 2 {
                    assert_eq!(sm[(i, j)], ZERO, "s- ({i},{j})");
                }
                if si < 2 || sj >= 2 {
                    assert_eq!(sp[(i, j)], ZERO, "s+ ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn sector_products_match_their_factors() {
        let model = OscillatorModel::new(1, 2.0, 0.5, 6).unwrap();
        let reg = build_registry(&model).unwrap();
        let prod = crate::linalg::matmul(
            reg.matrix("b+").unwrap(),
            reg.matrix("s-").unwrap(),
        );
        let r = crate::linalg::fro_norm(&sub(&prod, reg.matrix("b+s-").unwrap()));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn shifted_hamiltonian_is_h_minus_m_beta() {
        let model = OscillatorModel::new(1, 1.7, 1.0, 5).unwrap();
        let reg = build_registry(&model).unwrap();
        let expect = sub(
            reg.matrix("H").unwrap(),
            &crate::linalg::scale(reg.matrix("beta").unwrap(), re(1.7)),
        );
        let r = crate::linalg::fro_norm(&sub(&expect, reg.matrix("H0").unwrap()));
        assert!(r < 1e-14);
    }
}
