//! Parastatistics audit: which bilinear/trilinear relation families each
//! ladder family satisfies.
//!
//! Schemas are generated as plain-bracket relation instances and swept over
//! every mode and sign combination; a family "satisfies" a schema only when
//! every instance holds on the interior. Expected outcomes are encoded from
//! the source material, so an audit check passes when the observed verdict
//! matches the expected one (including expected failures).

use super::OperatorRegistry;
use crate::error::{Error, Result};
use crate::graded::{verify_relations, Coeff, OpExpr, RelationSchema};
use crate::report::{RelationCheck, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Bose,
    Fermi,
    Mixed,
}

/// A ladder family under audit: parafermion-type and paraboson-type modes,
/// each an (annihilator, creator) label pair.
#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub fermi: Vec<(String, String)>,
    pub bose: Vec<(String, String)>,
}

impl Family {
    fn single_bose(name: &str, modes: &[&str]) -> Self {
        Family {
            name: name.into(),
            fermi: vec![],
            bose: modes
                .iter()
                .map(|m| (format!("{m}-"), format!("{m}+")))
                .collect(),
        }
    }

    fn single_fermi(name: &str, modes: &[&str]) -> Self {
        Family {
            name: name.into(),
            fermi: modes
                .iter()
                .map(|m| (format!("{m}-"), format!("{m}+")))
                .collect(),
            bose: vec![],
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match (self.fermi.is_empty(), self.bose.is_empty()) {
            (false, true) => FamilyKind::Fermi,
            (true, false) => FamilyKind::Bose,
            _ => FamilyKind::Mixed,
        }
    }
}

/// The ladder families the audit knows about, per spatial dimension.
pub fn families_for(dim: usize) -> Vec<Family> {
    match dim {
        1 => vec![
            Family::single_bose("b", &["b"]),
            Family::single_fermi("s", &["s"]),
            Family {
                name: "mixed".into(),
                fermi: vec![("s-".into(), "s+".into())],
                bose: vec![("b-".into(), "b+".into())],
            },
        ],
        2 => vec![
            Family::single_bose("b", &["b1", "b2"]),
            Family::single_fermi("s", &["s1", "s2"]),
            Family::single_bose("a", &["a1", "a2"]),
            Family::single_bose("c", &["c1", "c2"]),
            Family {
                name: "mixed-j1".into(),
                fermi: vec![("s1-".into(), "s1+".into())],
                bose: vec![
                    ("a1-".into(), "a1+".into()),
                    ("c1-".into(), "c1+".into()),
                ],
            },
        ],
        3 => vec![
            Family::single_bose("Bs", &["Bs"]),
            Family::single_fermi("Ss", &["Ss"]),
            Family::single_fermi("s", &["s1", "s2", "s3"]),
            Family {
                name: "mixed".into(),
                fermi: vec![("Ss-".into(), "Ss+".into())],
                bose: vec![("Bs-".into(), "Bs+".into())],
            },
        ],
        _ => vec![],
    }
}

fn schemas_for(kind: FamilyKind) -> Vec<&'static str> {
    match kind {
        FamilyKind::Bose => vec!["boson", "paraboson", "boson-like", "same-mode"],
        FamilyKind::Fermi => vec!["fermion", "parafermion", "fermion-like", "same-mode"],
        FamilyKind::Mixed => vec!["relative-parafermion", "relative-paraboson"],
    }
}

/// The verdicts the source tables assert (true = the family satisfies the
/// schema).
fn expected(dim: usize, family: &str, schema: &str) -> bool {
    match (dim, family, schema) {
        (1, _, "relative-parafermion") => false,
        (1, _, _) => true,
        (2, "b", "boson") | (2, "b", "paraboson") => true,
        (2, "b", _) => false,
        (2, "s", "fermion-like") | (2, "s", "same-mode") => true,
        (2, "s", _) => false,
        (2, "a", "boson-like") | (2, "a", "same-mode") => true,
        (2, "a", _) => false,
        (2, "c", "boson-like") | (2, "c", "same-mode") => true,
        (2, "c", _) => false,
        (2, "mixed-j1", "relative-paraboson") => true,
        (2, "mixed-j1", _) => false,
        (3, "Bs", "boson") => false,
        (3, "Bs", _) => true,
        (3, "Ss", _) => true,
        (3, "s", "fermion-like") | (3, "s", "same-mode") => true,
        (3, "s", _) => false,
        (3, "mixed", _) => false,
        _ => true,
    }
}

struct SignedMode<'a> {
    labels: &'a [(String, String)],
}

impl<'a> SignedMode<'a> {
    fn get(&self, i: usize, sign: i32) -> OpExpr {
        let (minus, plus) = &self.labels[i];
        OpExpr::label(if sign < 0 { minus } else { plus })
    }

    fn label(&self, i: usize, sign: i32) -> String {
        let (minus, plus) = &self.labels[i];
        if sign < 0 { minus.clone() } else { plus.clone() }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }
}

const SIGNS: [i32; 2] = [-1, 1];

fn canonical_instances(fam: &SignedMode<'_>, fermionic: bool) -> Vec<RelationSchema> {
    let mut out = Vec::new();
    for i in 0..fam.len() {
        for j in 0..fam.len() {
            for zeta in SIGNS {
                for eta in SIGNS {
                    let lhs = if fermionic {
                        OpExpr::acomm_plain(fam.get(i, zeta), fam.get(j, eta))
                    } else {
                        OpExpr::comm_plain(fam.get(i, zeta), fam.get(j, eta))
                    };
                    // fermion: {f_i^z, f_j^e} = delta_ij [z != e] Id
                    // boson:   [b_i^z, b_j^e] = delta_ij (e - z)/2 Id
                    let c = if i != j {
                        0
                    } else if fermionic {
                        i64::from(zeta != eta)
                    } else {
                        i64::from(eta - zeta) / 2
                    };
                    let rhs = if c == 0 {
                        vec![]
                    } else {
                        vec![(Coeff::int(c), "Id".to_string())]
                    };
                    out.push(RelationSchema::new(
                        format!("canonical[{},{};{zeta},{eta}]", i, j),
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    out
}

/// Trilinear parastatistics relations (parafermion when `fermionic`).
fn para_instances(fam: &SignedMode<'_>, fermionic: bool) -> Vec<RelationSchema> {
    let mut out = Vec::new();
    for i in 0..fam.len() {
        for j in 0..fam.len() {
            for k in 0..fam.len() {
                for zeta in SIGNS {
                    for eta in SIGNS {
                        for xi in SIGNS {
                            let inner = if fermionic {
                                OpExpr::comm_plain(fam.get(i, zeta), fam.get(j, eta))
                            } else {
                                OpExpr::acomm_plain(fam.get(i, zeta), fam.get(j, eta))
                            };
                            let lhs = OpExpr::comm_plain(inner, fam.get(k, xi));
                            let mut rhs = Vec::new();
                            if fermionic {
                                // |xi - eta| d_jk f_i^z - |xi - zeta| d_ik f_j^e
                                if j == k && xi != eta {
                                    rhs.push((Coeff::int(2), fam.label(i, zeta)));
                                }
                                if i == k && xi != zeta {
                                    rhs.push((Coeff::int(-2), fam.label(j, eta)));
                                }
                            } else {
                                // (xi - eta) d_jk b_i^z + (xi - zeta) d_ik b_j^e
                                if j == k && xi != eta {
                                    rhs.push((Coeff::int(i64::from(xi - eta)), fam.label(i, zeta)));
                                }
                                if i == k && xi != zeta {
                                    rhs.push((Coeff::int(i64::from(xi - zeta)), fam.label(j, eta)));
                                }
                            }
                            out.push(RelationSchema::new(
                                format!("para[{i},{j},{k};{zeta},{eta},{xi}]"),
                                lhs,
                                rhs,
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The "-like" trilinear relations that keep the ladder property trading
/// Kronecker deltas for the all-mode pattern.
fn like_instances(fam: &SignedMode<'_>, fermionic: bool) -> Vec<RelationSchema> {
    let mut out = Vec::new();
    let inner = |a: OpExpr, b: OpExpr| {
        if fermionic {
            OpExpr::comm_plain(a, b)
        } else {
            OpExpr::acomm_plain(a, b)
        }
    };
    for i in 0..fam.len() {
        for j in 0..fam.len() {
            for k in 0..fam.len() {
                // [<X_i^+, X_j^->, X_k^-] = -2 d_ij X_k^- + 2 d_jk X_i^- - 2 d_ki X_j^-
                let lhs = OpExpr::comm_plain(inner(fam.get(i, 1), fam.get(j, -1)), fam.get(k, -1));
                let mut rhs = Vec::new();
                if i == j {
                    rhs.push((Coeff::int(-2), fam.label(k, -1)));
                }
                if j == k {
                    rhs.push((Coeff::int(2), fam.label(i, -1)));
                }
                if k == i {
                    rhs.push((Coeff::int(-2), fam.label(j, -1)));
                }
                out.push(RelationSchema::new(format!("like[{i},{j},{k}]"), lhs, rhs));
                // [<X_i^-, X_j^->, X_k^-] = 0
                let lhs0 =
                    OpExpr::comm_plain(inner(fam.get(i, -1), fam.get(j, -1)), fam.get(k, -1));
                out.push(RelationSchema::new(
                    format!("like0[{i},{j},{k}]"),
                    lhs0,
                    vec![],
                ));
            }
        }
    }
    out
}

/// [<X_j^+, X_j^->, X_k^-] = -2 X_k^- for every j, k.
fn same_mode_instances(fam: &SignedMode<'_>, fermionic: bool) -> Vec<RelationSchema> {
    let mut out = Vec::new();
    for j in 0..fam.len() {
        for k in 0..fam.len() {
            let inner = if fermionic {
                OpExpr::comm_plain(fam.get(j, 1), fam.get(j, -1))
            } else {
                OpExpr::acomm_plain(fam.get(j, 1), fam.get(j, -1))
            };
            let lhs = OpExpr::comm_plain(inner, fam.get(k, -1));
            out.push(RelationSchema::new(
                format!("same-mode[{j},{k}]"),
                lhs,
                vec![(Coeff::int(-2), fam.label(k, -1))],
            ));
        }
    }
    out
}

/// Mixed relative relations; `paraboson_flavour` selects the relative
/// paraboson set, otherwise the relative parafermion set.
fn relative_instances(
    f: &SignedMode<'_>,
    b: &SignedMode<'_>,
    paraboson_flavour: bool,
) -> Vec<RelationSchema> {
    let mut out = Vec::new();
    // [[f_i^z, f_j^e], b_k^x] = 0
    for i in 0..f.len() {
        for j in 0..f.len() {
            for k in 0..b.len() {
                for (zeta, eta, xi) in sign_triples() {
                    let lhs = OpExpr::comm_plain(
                        OpExpr::comm_plain(f.get(i, zeta), f.get(j, eta)),
                        b.get(k, xi),
                    );
                    out.push(RelationSchema::new(
                        format!("ffb[{i},{j},{k};{zeta},{eta},{xi}]"),
                        lhs,
                        vec![],
                    ));
                }
            }
        }
    }
    // [{b_i^z, b_j^e}, f_k^x] = 0
    for i in 0..b.len() {
        for j in 0..b.len() {
            for k in 0..f.len() {
                for (zeta, eta, xi) in sign_triples() {
                    let lhs = OpExpr::comm_plain(
                        OpExpr::acomm_plain(b.get(i, zeta), b.get(j, eta)),
                        f.get(k, xi),
                    );
                    out.push(RelationSchema::new(
                        format!("bbf[{i},{j},{k};{zeta},{eta},{xi}]"),
                        lhs,
                        vec![],
                    ));
                }
            }
        }
    }
    for i in 0..f.len() {
        for j in 0..b.len() {
            for (zeta, eta, xi) in sign_triples() {
                if paraboson_flavour {
                    // {{f_i^z, b_j^e}, f_k^x} = |x - z| d_ik b_j^e
                    for k in 0..f.len() {
                        let lhs = OpExpr::acomm_plain(
                            OpExpr::acomm_plain(f.get(i, zeta), b.get(j, eta)),
                            f.get(k, xi),
                        );
                        let rhs = if i == k && xi != zeta {
                            vec![(Coeff::int(2), b.label(j, eta))]
                        } else {
                            vec![]
                        };
                        out.push(RelationSchema::new(
                            format!("fbf[{i},{j},{k};{zeta},{eta},{xi}]"),
                            lhs,
                            rhs,
                        ));
                    }
                    // [{f_i^z, b_j^e}, b_k^x] = (x - e) d_jk f_i^z
                    for k in 0..b.len() {
                        let lhs = OpExpr::comm_plain(
                            OpExpr::acomm_plain(f.get(i, zeta), b.get(j, eta)),
                            b.get(k, xi),
                        );
                        let rhs = if j == k && xi != eta {
                            vec![(Coeff::int(i64::from(xi - eta)), f.label(i, zeta))]
                        } else {
                            vec![]
                        };
                        out.push(RelationSchema::new(
                            format!("fbb[{i},{j},{k};{zeta},{eta},{xi}]"),
                            lhs,
                            rhs,
                        ));
                    }
                } else {
                    // [[f_i^z, b_j^e], f_k^x] = -|x - z| d_ik b_j^e
                    for k in 0..f.len() {
                        let lhs = OpExpr::comm_plain(
                            OpExpr::comm_plain(f.get(i, zeta), b.get(j, eta)),
                            f.get(k, xi),
                        );
                        let rhs = if i == k && xi != zeta {
                            vec![(Coeff::int(-2), b.label(j, eta))]
                        } else {
                            vec![]
                        };
                        out.push(RelationSchema::new(
                            format!("fbf[{i},{j},{k};{zeta},{eta},{xi}]"),
                            lhs,
                            rhs,
                        ));
                    }
                    // {[f_i^z, b_j^e], b_k^x} = (x - e) d_jk f_i^z
                    for k in 0..b.len() {
                        let lhs = OpExpr::acomm_plain(
                            OpExpr::comm_plain(f.get(i, zeta), b.get(j, eta)),
                            b.get(k, xi),
                        );
                        let rhs = if j == k && xi != eta {
                            vec![(Coeff::int(i64::from(xi - eta)), f.label(i, zeta))]
                        } else {
                            vec![]
                        };
                        out.push(RelationSchema::new(
                            format!("fbb[{i},{j},{k};{zeta},{eta},{xi}]"),
                            lhs,
                            rhs,
                        ));
                    }
                }
            }
        }
    }
    out
}

fn sign_triples() -> Vec<(i32, i32, i32)> {
    let mut out = Vec::with_capacity(8);
    for zeta in SIGNS {
        for eta in SIGNS {
            for xi in SIGNS {
                out.push((zeta, eta, xi));
            }
        }
    }
    out
}

fn schema_instances(family: &Family, schema: &str) -> Result<Vec<RelationSchema>> {
    let fermi = SignedMode { labels: &family.fermi };
    let bose = SignedMode { labels: &family.bose };
    Ok(match schema {
        "boson" => canonical_instances(&bose, false),
        "fermion" => canonical_instances(&fermi, true),
        "paraboson" => para_instances(&bose, false),
        "parafermion" => para_instances(&fermi, true),
        "boson-like" => like_instances(&bose, false),
        "fermion-like" => like_instances(&fermi, true),
        "same-mode" => match family.kind() {
            FamilyKind::Bose => same_mode_instances(&bose, false),
            _ => same_mode_instances(&fermi, true),
        },
        "relative-parafermion" => relative_instances(&fermi, &bose, false),
        "relative-paraboson" => relative_instances(&fermi, &bose, true),
        other => return Err(Error::UnknownFamily(format!("schema {other}"))),
    })
}

/// Audit one family against every schema applicable to its kind.
pub fn parastatistics_audit(
    registry: &OperatorRegistry,
    family_name: &str,
) -> Result<VerificationReport> {
    let dim = registry.model.dim;
    let family = families_for(dim)
        .into_iter()
        .find(|f| f.name == family_name)
        .ok_or_else(|| Error::UnknownFamily(family_name.into()))?;
    let tol = 1e-10;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for schema in schemas_for(family.kind()) {
        let instances = schema_instances(&family, schema)?;
        let count = instances.len();
        let sub = verify_relations("audit", &instances, &[], registry, tol)?;
        let worst = sub
            .checks
            .iter()
            .max_by(|a, b| a.residual.total_cmp(&b.residual))
            .expect("nonempty schema");
        let check = RelationCheck::new(
            format!("parastat[{}].{}.{}", dim, family.name, schema),
            worst.residual,
            worst.residual_unprojected,
            worst.depth,
            tol,
        )
        .expecting(expected(dim, &family.name, schema));
        notes.push(format!(
            "{}: {} instances, worst {} at {:.3e}",
            check.id, count, worst.id, worst.residual
        ));
        checks.push(check);
    }
    let mut report = VerificationReport::new(format!("parastat-audit[{}]", family.name), checks);
    report.notes = notes;
    Ok(report)
}

/// Audit every family of the model's dimension.
pub fn parastatistics_audit_all(registry: &OperatorRegistry) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for family in families_for(registry.model.dim) {
        parts.push(parastatistics_audit(registry, &family.name)?);
    }
    Ok(VerificationReport::merge("parastat-audit", parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{build_registry, OscillatorModel};

    #[test]
    fn unknown_family_is_rejected() {
        let model = OscillatorModel::new(1, 1.0, 1.0, 4).unwrap();
        let reg = build_registry(&model).unwrap();
        assert!(matches!(
            parastatistics_audit(&reg, "nope"),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn one_dimensional_verdicts() {
        let model = OscillatorModel::new(1, 1.0, 1.0, 10).unwrap();
        let reg = build_registry(&model).unwrap();
        let report = parastatistics_audit_all(&reg).unwrap();
        assert!(report.passed, "{}", report.to_text());
        // spot-check the relative pair on the mixed family
        let relpb = report
            .checks
            .iter()
            .find(|c| c.id == "parastat[1].mixed.relative-paraboson")
            .unwrap();
        assert!(relpb.satisfied);
        let relpf = report
            .checks
            .iter()
            .find(|c| c.id == "parastat[1].mixed.relative-parafermion")
            .unwrap();
        assert!(!relpf.satisfied && relpf.pass);
    }
}
