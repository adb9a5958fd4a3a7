//! The builtin algebra presentations and the per-dimension operator
//! relation sets, encoded row by row from the source tables with every
//! "etc." expanded over sign combinations (expanded instances are flagged).

use super::{AlgebraSpec, ClosurePolicy, Coeff, Degree, OpExpr, RelationSchema};

fn gen(label: &str, degree: &str) -> (String, Degree) {
    (label.into(), Degree::parse(degree).expect("builtin degree"))
}

fn lbl(s: &str) -> OpExpr {
    OpExpr::label(s)
}

fn rel<S: Into<String>>(id: String, lhs: OpExpr, rhs: Vec<(Coeff, S)>) -> RelationSchema {
    RelationSchema::new(id, lhs, rhs.into_iter().map(|(c, l)| (c, l.into())).collect())
}

fn rel0(id: String, lhs: OpExpr) -> RelationSchema {
    RelationSchema::new(id, lhs, vec![])
}

const SIGNS: [i32; 2] = [-1, 1];

fn sgn(z: i32) -> &'static str {
    if z < 0 {
        "-"
    } else {
        "+"
    }
}

/// w * sqrt(2mw)
fn omega_sqrt_2mw(num: i64) -> Coeff {
    Coeff { num, den: 1, powi: 0, pow2: 1, powm: 1, poww: 3 }
}

// ---------------------------------------------------------------------------
// one spatial dimension

fn bfa11() -> AlgebraSpec {
    let mut relations = vec![
        rel("bfa11.bb".into(), OpExpr::comm(lbl("b-"), lbl("b+")), vec![(Coeff::int(1), "Id")]),
        rel("bfa11.ss".into(), OpExpr::acomm(lbl("s-"), lbl("s+")), vec![(Coeff::int(1), "Id")]),
    ];
    for z in SIGNS {
        relations.push(rel0(
            format!("bfa11.ss.nilpotent[{}]", sgn(z)),
            OpExpr::acomm(lbl(&format!("s{}", sgn(z))), lbl(&format!("s{}", sgn(z)))),
        ));
    }
    for eta in SIGNS {
        for zeta in SIGNS {
            relations.push(rel0(
                format!("bfa11.bs[{},{}]", sgn(eta), sgn(zeta)),
                OpExpr::comm(lbl(&format!("b{}", sgn(eta))), lbl(&format!("s{}", sgn(zeta)))),
            ));
        }
    }
    AlgebraSpec {
        name: "bfa(1|1)".into(),
        grading_len: 1,
        dim: 1,
        generators: vec![gen("Id", "0"), gen("b-", "0"), gen("b+", "0"), gen("s-", "1"), gen("s+", "1")],
        aux: vec![],
        relations,
        closure: ClosurePolicy::AllRemainingZero,
    }
}

fn pso32() -> AlgebraSpec {
    let mut relations = vec![
        rel(
            "pso32.bb".into(),
            OpExpr::acomm(lbl("b-"), lbl("b+")),
            vec![(Coeff::mw(2, 1, 0, -1), "Hsch")],
        ),
        rel("pso32.ss".into(), OpExpr::comm(lbl("s-"), lbl("s+")), vec![(Coeff::int(-2), "Sc")]),
        rel0("pso32.Hsch.Sc".into(), OpExpr::comm(lbl("Hsch"), lbl("Sc"))),
    ];
    for eta in SIGNS {
        for zeta in SIGNS {
            let mut r = rel(
                format!("pso32.bs[{},{}]", sgn(eta), sgn(zeta)),
                OpExpr::acomm(lbl(&format!("b{}", sgn(eta))), lbl(&format!("s{}", sgn(zeta)))),
                vec![(Coeff::int(2), format!("b{}s{}", sgn(eta), sgn(zeta)))],
            );
            if !(eta < 0 && zeta < 0) {
                r = r.expanded();
            }
            relations.push(r);
        }
    }
    for z in SIGNS {
        relations.push(rel(
            format!("pso32.Hsch.b[{}]", sgn(z)),
            OpExpr::comm(lbl("Hsch"), lbl(&format!("b{}", sgn(z)))),
            vec![(Coeff::mw(z as i64, 1, 0, 1), format!("b{}", sgn(z)))],
        ));
        relations.push(rel0(
            format!("pso32.Hsch.s[{}]", sgn(z)),
            OpExpr::comm(lbl("Hsch"), lbl(&format!("s{}", sgn(z)))),
        ));
        relations.push(rel0(
            format!("pso32.Sc.b[{}]", sgn(z)),
            OpExpr::comm(lbl("Sc"), lbl(&format!("b{}", sgn(z)))),
        ));
        relations.push(rel(
            format!("pso32.Sc.s[{}]", sgn(z)),
            OpExpr::comm(lbl("Sc"), lbl(&format!("s{}", sgn(z)))),
            vec![(Coeff::int(z as i64), format!("s{}", sgn(z)))],
        ));
        relations.push(
            rel(
                format!("pso32.bsq[{}]", sgn(z)),
                OpExpr::acomm(lbl(&format!("b{}", sgn(z))), lbl(&format!("b{}", sgn(z)))),
                vec![(Coeff::int(2), format!("b{}^2", sgn(z)))],
            )
            .expanded(),
        );
    }
    // trilinear rows through the 01-sector products
    for eta in SIGNS {
        for zeta in SIGNS {
            let prod = format!("b{}s{}", sgn(eta), sgn(zeta));
            for xi in SIGNS {
                relations.push(rel(
                    format!("pso32.bsb[{},{},{}]", sgn(eta), sgn(zeta), sgn(xi)),
                    OpExpr::comm(lbl(&prod), lbl(&format!("b{}", sgn(xi)))),
                    if xi == eta {
                        vec![]
                    } else {
                        vec![(
                            Coeff::int((xi - eta) as i64 / 2),
                            format!("s{}", sgn(zeta)),
                        )]
                    },
                ));
                relations.push(rel(
                    format!("pso32.bss[{},{},{}]", sgn(eta), sgn(zeta), sgn(xi)),
                    OpExpr::acomm(lbl(&prod), lbl(&format!("s{}", sgn(xi)))),
                    if xi == zeta {
                        vec![]
                    } else {
                        vec![(Coeff::int(1), format!("b{}", sgn(eta)))]
                    },
                ));
            }
        }
    }
    // shifted Hamiltonian rows
    relations.push(rel(
        "pso32.H0.sq".into(),
        OpExpr::acomm(lbl("H0"), lbl("H0")),
        vec![(Coeff::mw(4, 1, 1, 0), "Hsch"), (Coeff::mw(4, 1, 1, 1), "Sc")],
    ));
    for z in SIGNS {
        relations.push(rel(
            format!("pso32.H0.b[{}]", sgn(z)),
            OpExpr::comm(lbl("H0"), lbl(&format!("b{}", sgn(z)))),
            vec![(Coeff::sqrt_2mw(z as i64, 1), format!("s{}", sgn(z)))],
        ));
        relations.push(rel(
            format!("pso32.H0.s[{}]", sgn(z)),
            OpExpr::acomm(lbl("H0"), lbl(&format!("s{}", sgn(z)))),
            vec![(Coeff::sqrt_2mw(1, 1), format!("b{}", sgn(z)))],
        ));
    }
    relations.push(rel(
        "pso32.Hsch.H0".into(),
        OpExpr::comm(lbl("Hsch"), lbl("H0")),
        vec![(omega_sqrt_2mw(1), "b+s-"), (omega_sqrt_2mw(-1), "b-s+")],
    ));
    relations.push(rel(
        "pso32.Sc.H0".into(),
        OpExpr::comm(lbl("Sc"), lbl("H0")),
        vec![(Coeff::sqrt_2mw(-1, 1), "b+s-"), (Coeff::sqrt_2mw(1, 1), "b-s+")],
    ));
    // ladder relations of the squared Hamiltonian
    for (family, labels) in [("b", ["b-", "b+"]), ("s", ["s-", "s+"])] {
        for (idx, z) in SIGNS.iter().enumerate() {
            relations.push(rel(
                format!("pso32.H2ladder.{family}[{}]", sgn(*z)),
                OpExpr::comm(lbl("Hsq"), lbl(labels[idx])),
                vec![(Coeff::mw(2 * *z as i64, 1, 1, 1), labels[idx])],
            ));
        }
    }
    relations.push(rel(
        "pso32.H2.decomp".into(),
        OpExpr::sum(vec![
            OpExpr::scaled(Coeff::mw(2, 1, 1, 0), lbl("Hsch")),
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("Sc")),
            OpExpr::scaled(Coeff::mw(1, 1, 2, 0), lbl("Id")),
        ]),
        vec![(Coeff::int(1), "Hsq")],
    ));
    relations.push(rel(
        "pso32.H.decomp".into(),
        OpExpr::sum(vec![
            OpExpr::scaled(Coeff::sqrt_2mw(1, 1), lbl("b+s-")),
            OpExpr::scaled(Coeff::sqrt_2mw(1, 1), lbl("b-s+")),
            OpExpr::scaled(Coeff::mw(-2, 1, 1, 0), lbl("Sc")),
        ]),
        vec![(Coeff::int(1), "H")],
    ));
    // interleave rows against the full Hamiltonian (plain brackets)
    for z in SIGNS {
        relations.push(rel(
            format!("pso32.interleave.s[{}]", sgn(z)),
            OpExpr::acomm_plain(lbl("H"), lbl(&format!("s{}", sgn(z)))),
            vec![(Coeff::sqrt_2mw(1, 1), format!("b{}", sgn(z)))],
        ));
        relations.push(rel(
            format!("pso32.interleave.b[{}]", sgn(z)),
            OpExpr::comm_plain(lbl("H"), lbl(&format!("b{}", sgn(z)))),
            vec![(Coeff::sqrt_2mw(z as i64, 1), format!("s{}", sgn(z)))],
        ));
    }
    AlgebraSpec {
        name: "pso(3|2)".into(),
        grading_len: 2,
        dim: 1,
        generators: vec![
            gen("Hsch", "00"),
            gen("Sc", "00"),
            gen("b-^2", "00"),
            gen("b+^2", "00"),
            gen("b-s-", "01"),
            gen("b+s+", "01"),
            gen("b-s+", "01"),
            gen("b+s-", "01"),
            gen("b-", "10"),
            gen("b+", "10"),
            gen("s-", "11"),
            gen("s+", "11"),
        ],
        aux: vec![gen("Id", "00"), gen("H0", "01"), gen("Hsq", "00")],
        relations,
        closure: ClosurePolicy::SpanOfBasis,
    }
}

// ---------------------------------------------------------------------------
// two spatial dimensions

fn bfa21() -> AlgebraSpec {
    let mut relations = vec![
        rel("bfa21.aa".into(), OpExpr::comm(lbl("a1-"), lbl("a1+")), vec![(Coeff::int(1), "Id")]),
        rel("bfa21.cc".into(), OpExpr::comm(lbl("c1-"), lbl("c1+")), vec![(Coeff::int(1), "Id")]),
        rel("bfa21.ss".into(), OpExpr::acomm(lbl("s1-"), lbl("s1+")), vec![(Coeff::int(1), "Id")]),
    ];
    for z in SIGNS {
        relations.push(rel0(
            format!("bfa21.ss.nilpotent[{}]", sgn(z)),
            OpExpr::acomm(lbl(&format!("s1{}", sgn(z))), lbl(&format!("s1{}", sgn(z)))),
        ));
    }
    for (x, y) in [("a", "c"), ("a", "s"), ("c", "s")] {
        for eta in SIGNS {
            for xi in SIGNS {
                relations.push(rel0(
                    format!("bfa21.{x}{y}[{},{}]", sgn(eta), sgn(xi)),
                    OpExpr::comm(
                        lbl(&format!("{x}1{}", sgn(eta))),
                        lbl(&format!("{y}1{}", sgn(xi))),
                    ),
                ));
            }
        }
    }
    AlgebraSpec {
        name: "bfa(2|1)".into(),
        grading_len: 1,
        dim: 2,
        generators: vec![
            gen("Id", "0"),
            gen("a1-", "0"),
            gen("a1+", "0"),
            gen("c1-", "0"),
            gen("c1+", "0"),
            gen("s1-", "1"),
            gen("s1+", "1"),
        ],
        aux: vec![],
        relations,
        closure: ClosurePolicy::AllRemainingZero,
    }
}

fn pso34(chirality: char) -> AlgebraSpec {
    let suffix = if chirality == '+' { "p" } else { "m" };
    let t = |base: &str| format!("{base}_{suffix}");
    let short = if chirality == '+' { "psoP" } else { "psoM" };
    let mut relations = vec![
        rel0(format!("{short}.H.CLS"), OpExpr::comm(lbl(&t("H")), lbl(&t("CLS")))),
        rel0(format!("{short}.H.Sc"), OpExpr::comm(lbl(&t("H")), lbl(&t("Sc")))),
        rel0(format!("{short}.CLS.Sc"), OpExpr::comm(lbl(&t("CLS")), lbl(&t("Sc")))),
        rel(
            format!("{short}.aa"),
            OpExpr::acomm(lbl(&t("a-")), lbl(&t("a+"))),
            vec![
                (Coeff::mw(1, 1, 0, -1), t("H")),
                (Coeff::int(1), t("CLS")),
            ],
        ),
        rel(
            format!("{short}.cc"),
            OpExpr::acomm(lbl(&t("c-")), lbl(&t("c+"))),
            vec![
                (Coeff::mw(1, 1, 0, -1), t("H")),
                (Coeff::int(-1), t("CLS")),
            ],
        ),
        rel(
            format!("{short}.ss"),
            OpExpr::comm(lbl(&t("s-")), lbl(&t("s+"))),
            vec![(Coeff::int(-2), t("Sc"))],
        ),
    ];
    for z in SIGNS {
        for fam in ["a", "c"] {
            relations.push(rel(
                format!("{short}.H.{fam}[{}]", sgn(z)),
                OpExpr::comm(lbl(&t("H")), lbl(&t(&format!("{fam}{}", sgn(z))))),
                vec![(
                    Coeff::mw(z as i64, 1, 0, 1),
                    t(&format!("{fam}{}", sgn(z))),
                )],
            ));
            let cls_sign = if fam == "a" { z } else { -z };
            relations.push(rel(
                format!("{short}.CLS.{fam}[{}]", sgn(z)),
                OpExpr::comm(lbl(&t("CLS")), lbl(&t(&format!("{fam}{}", sgn(z))))),
                vec![(
                    Coeff::int(cls_sign as i64),
                    t(&format!("{fam}{}", sgn(z))),
                )],
            ));
            relations.push(rel0(
                format!("{short}.Sc.{fam}[{}]", sgn(z)),
                OpExpr::comm(lbl(&t("Sc")), lbl(&t(&format!("{fam}{}", sgn(z))))),
            ));
            relations.push(
                rel(
                    format!("{short}.{fam}sq[{}]", sgn(z)),
                    OpExpr::acomm(
                        lbl(&t(&format!("{fam}{}", sgn(z)))),
                        lbl(&t(&format!("{fam}{}", sgn(z)))),
                    ),
                    vec![(
                        Coeff::int(2),
                        t(&format!("{fam}{}^2", sgn(z))),
                    )],
                )
                .expanded(),
            );
        }
        relations.push(rel0(
            format!("{short}.CLS.s[{}]", sgn(z)),
            OpExpr::comm(lbl(&t("CLS")), lbl(&t(&format!("s{}", sgn(z))))),
        ));
        relations.push(rel(
            format!("{short}.Sc.s[{}]", sgn(z)),
            OpExpr::comm(lbl(&t("Sc")), lbl(&t(&format!("s{}", sgn(z))))),
            vec![(Coeff::int(z as i64), t(&format!("s{}", sgn(z))))],
        ));
        relations.push(rel0(
            format!("{short}.H.s[{}]", sgn(z)),
            OpExpr::comm(lbl(&t("H")), lbl(&t(&format!("s{}", sgn(z))))),
        ));
    }
    // pair products named in the sector table
    for (x, y) in [("a", "c"), ("a", "s"), ("c", "s")] {
        for eta in SIGNS {
            for xi in SIGNS {
                let mut r = rel(
                    format!("{short}.{x}{y}[{},{}]", sgn(eta), sgn(xi)),
                    OpExpr::acomm(
                        lbl(&t(&format!("{x}{}", sgn(eta)))),
                        lbl(&t(&format!("{y}{}", sgn(xi)))),
                    ),
                    vec![(
                        Coeff::int(2),
                        t(&format!("{x}{}{y}{}", sgn(eta), sgn(xi))),
                    )],
                );
                if !(eta < 0 && xi < 0) {
                    r = r.expanded();
                }
                relations.push(r);
            }
        }
    }
    // trilinear rows through the 01-sector products
    for fam in ["a", "c"] {
        let other = if fam == "a" { "c" } else { "a" };
        for eta in SIGNS {
            for zeta in SIGNS {
                let prod = t(&format!("{fam}{}s{}", sgn(eta), sgn(zeta)));
                for xi in SIGNS {
                    relations.push(rel(
                        format!("{short}.{fam}s{fam}[{},{},{}]", sgn(eta), sgn(zeta), sgn(xi)),
                        OpExpr::comm(lbl(&prod), lbl(&t(&format!("{fam}{}", sgn(xi))))),
                        if xi == eta {
                            vec![]
                        } else {
                            vec![(
                                Coeff::int((xi - eta) as i64 / 2),
                                t(&format!("s{}", sgn(zeta))),
                            )]
                        },
                    ));
                    relations.push(rel(
                        format!("{short}.{fam}ss[{},{},{}]", sgn(eta), sgn(zeta), sgn(xi)),
                        OpExpr::acomm(lbl(&prod), lbl(&t(&format!("s{}", sgn(xi))))),
                        if xi == zeta {
                            vec![]
                        } else {
                            vec![(
                                Coeff::int(1),
                                t(&format!("{fam}{}", sgn(eta))),
                            )]
                        },
                    ));
                    relations.push(rel0(
                        format!("{short}.{fam}s{other}[{},{},{}]", sgn(eta), sgn(zeta), sgn(xi)),
                        OpExpr::comm(lbl(&prod), lbl(&t(&format!("{other}{}", sgn(xi))))),
                    ));
                }
            }
        }
    }
    let mut generators = vec![
        gen(&t("H"), "00"),
        gen(&t("CLS"), "00"),
        gen(&t("Sc"), "00"),
    ];
    for fam in ["a", "c"] {
        for z in SIGNS {
            generators.push(gen(&t(&format!("{fam}{}^2", sgn(z))), "00"));
        }
    }
    for (eta, xi) in [(-1, -1), (1, 1), (-1, 1), (1, -1)] {
        generators.push(gen(&t(&format!("a{}c{}", sgn(eta), sgn(xi))), "00"));
    }
    for fam in ["a", "c"] {
        for (eta, zeta) in [(-1, -1), (1, 1), (-1, 1), (1, -1)] {
            generators.push(gen(&t(&format!("{fam}{}s{}", sgn(eta), sgn(zeta))), "01"));
        }
    }
    for fam in ["a", "c"] {
        for z in SIGNS {
            generators.push(gen(&t(&format!("{fam}{}", sgn(z))), "10"));
        }
    }
    for z in SIGNS {
        generators.push(gen(&t(&format!("s{}", sgn(z))), "11"));
    }
    AlgebraSpec {
        name: format!("pso{chirality}(3|4)"),
        grading_len: 2,
        dim: 2,
        generators,
        aux: vec![gen("Id", "00")],
        relations,
        closure: ClosurePolicy::SpanOfBasis,
    }
}

// ---------------------------------------------------------------------------
// three spatial dimensions

fn osp_core_relations(short: &str) -> Vec<RelationSchema> {
    let mut relations = vec![
        rel(format!("{short}.SsSs"), OpExpr::acomm(lbl("Ss-"), lbl("Ss+")), vec![(Coeff::int(1), "Id")]),
        rel(
            format!("{short}.BsBs"),
            OpExpr::acomm(lbl("Bs-"), lbl("Bs+")),
            vec![(Coeff::int(2), "N-Sc"), (Coeff::int(2), "Id")],
        ),
        rel(
            format!("{short}.Bsq.comm"),
            OpExpr::comm(lbl("Bs-^2"), lbl("Bs+^2")),
            vec![(Coeff::int(4), "N-Sc"), (Coeff::int(4), "Id")],
        ),
    ];
    for z in SIGNS {
        let zs = sgn(z);
        relations.push(rel(
            format!("{short}.N.Bs[{zs}]"),
            OpExpr::comm(lbl("N-Sc"), lbl(&format!("Bs{zs}"))),
            vec![(Coeff::int(z as i64), format!("Bs{zs}"))],
        ));
        relations.push(rel0(
            format!("{short}.N.Ss[{zs}]"),
            OpExpr::comm(lbl("N-Sc"), lbl(&format!("Ss{zs}"))),
        ));
        relations.push(rel(
            format!("{short}.N.Bsq[{zs}]"),
            OpExpr::comm(lbl("N-Sc"), lbl(&format!("Bs{zs}^2"))),
            vec![(Coeff::int(2 * z as i64), format!("Bs{zs}^2"))],
        ));
        relations.push(rel0(
            format!("{short}.Ss.nilpotent[{zs}]"),
            OpExpr::acomm(lbl(&format!("Ss{zs}")), lbl(&format!("Ss{zs}"))),
        ));
        relations.push(
            rel(
                format!("{short}.Bs.sq[{zs}]"),
                OpExpr::acomm(lbl(&format!("Bs{zs}")), lbl(&format!("Bs{zs}"))),
                vec![(Coeff::int(2), format!("Bs{zs}^2"))],
            )
            .expanded(),
        );
        relations.push(rel(
            format!("{short}.Bsq.Bs[{zs}]"),
            OpExpr::comm(lbl(&format!("Bs{}^2", sgn(-z))), lbl(&format!("Bs{zs}"))),
            vec![(Coeff::int(2 * z as i64), format!("Bs{}", sgn(-z)))],
        ));
        for x in SIGNS {
            relations.push(rel0(
                format!("{short}.series[{zs},{}]", sgn(x)),
                OpExpr::comm(lbl(&format!("Bs{zs}")), lbl(&format!("Ss{}", sgn(x)))),
            ));
        }
    }
    relations
}

fn osp_sl() -> AlgebraSpec {
    AlgebraSpec {
        name: "osp01(1|2)+sl10(1|1)".into(),
        grading_len: 2,
        dim: 3,
        generators: vec![
            gen("N-Sc", "00"),
            gen("Id", "00"),
            gen("Bs-^2", "00"),
            gen("Bs+^2", "00"),
            gen("Bs-", "01"),
            gen("Bs+", "01"),
            gen("Ss-", "10"),
            gen("Ss+", "10"),
        ],
        aux: vec![],
        relations: osp_core_relations("ospsl"),
        closure: ClosurePolicy::AllRemainingZero,
    }
}

fn osp_gl() -> AlgebraSpec {
    let short = "ospgl";
    let mut relations = osp_core_relations(short);
    for z in SIGNS {
        let zs = sgn(z);
        relations.push(rel(
            format!("{short}.Sc.Ss[{zs}]"),
            OpExpr::comm(lbl("Sc"), lbl(&format!("Ss{zs}"))),
            vec![(Coeff::int(z as i64), format!("Ss{zs}"))],
        ));
        relations.push(rel0(
            format!("{short}.Sc.Bs[{zs}]"),
            OpExpr::comm(lbl("Sc"), lbl(&format!("Bs{zs}"))),
        ));
        relations.push(rel0(
            format!("{short}.CLS.Bs[{zs}]"),
            OpExpr::acomm(lbl("CLS"), lbl(&format!("Bs{zs}"))),
        ));
        relations.push(rel0(
            format!("{short}.CLS.Ss[{zs}]"),
            OpExpr::acomm(lbl("CLS"), lbl(&format!("Ss{zs}"))),
        ));
        // full number operator rows, N = (N - Sc) + Sc
        relations.push(rel(
            format!("{short}.fullN.Bs[{zs}]"),
            OpExpr::comm(lbl("N"), lbl(&format!("Bs{zs}"))),
            vec![(Coeff::int(z as i64), format!("Bs{zs}"))],
        ));
        relations.push(rel(
            format!("{short}.fullN.Ss[{zs}]"),
            OpExpr::comm(lbl("N"), lbl(&format!("Ss{zs}"))),
            vec![(Coeff::int(z as i64), format!("Ss{zs}"))],
        ));
        // colour-bracket ladder action of the squared Hamiltonian,
        // H^2 = 2mw N + 2mw CLS + (2mw + m^2) Id split into homogeneous parts
        let h2_parts = OpExpr::sum(vec![
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("N")),
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("CLS")),
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("Id")),
            OpExpr::scaled(Coeff::mw(1, 1, 2, 0), lbl("Id")),
        ]);
        for fam in ["Bs", "Ss"] {
            relations.push(rel(
                format!("{short}.H2.{fam}[{zs}]"),
                OpExpr::br(h2_parts.clone(), lbl(&format!("{fam}{zs}"))),
                vec![(
                    Coeff::mw(2 * z as i64, 1, 1, 1),
                    format!("{fam}{zs}"),
                )],
            ));
            // braid form: H^2 X - X underline(H^2) gives the same action
            relations.push(rel(
                format!("{short}.braid.{fam}[{zs}]"),
                OpExpr::sum(vec![
                    OpExpr::prod(lbl("Hsq"), lbl(&format!("{fam}{zs}"))),
                    OpExpr::scaled(
                        Coeff::int(-1),
                        OpExpr::prod(lbl(&format!("{fam}{zs}")), lbl("Hsqu")),
                    ),
                ]),
                vec![(
                    Coeff::mw(2 * z as i64, 1, 1, 1),
                    format!("{fam}{zs}"),
                )],
            ));
        }
        // (T±)² = (Bs±)²
        relations.push(rel(
            format!("{short}.Tsq[{zs}]"),
            OpExpr::prod(lbl(&format!("T{zs}")), lbl(&format!("T{zs}"))),
            vec![(Coeff::int(1), format!("Bs{zs}^2"))],
        ));
    }
    relations.push(rel(
        format!("{short}.H2.decomp"),
        OpExpr::sum(vec![
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("N")),
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("CLS")),
            OpExpr::scaled(Coeff::mw(2, 1, 1, 1), lbl("Id")),
            OpExpr::scaled(Coeff::mw(1, 1, 2, 0), lbl("Id")),
        ]),
        vec![(Coeff::int(1), "Hsq")],
    ));
    relations.push(rel(
        format!("{short}.H.decomp"),
        OpExpr::sum(vec![
            OpExpr::scaled(Coeff::sqrt_2mw(1, 1), OpExpr::prod(lbl("Bs+"), lbl("Ss-"))),
            OpExpr::scaled(Coeff::sqrt_2mw(1, 1), OpExpr::prod(lbl("Bs-"), lbl("Ss+"))),
            OpExpr::scaled(Coeff::mw(-2, 1, 1, 0), lbl("Sc")),
        ]),
        vec![(Coeff::int(1), "H")],
    ));
    AlgebraSpec {
        name: "osp01(1|2)+gl10(1|1)+a11".into(),
        grading_len: 2,
        dim: 3,
        generators: vec![
            gen("N-Sc", "00"),
            gen("Sc", "00"),
            gen("Id", "00"),
            gen("Bs-^2", "00"),
            gen("Bs+^2", "00"),
            gen("Bs-", "01"),
            gen("Bs+", "01"),
            gen("Ss-", "10"),
            gen("Ss+", "10"),
            gen("CLS", "11"),
        ],
        aux: vec![gen("N", "00"), gen("T-", "10"), gen("T+", "10")],
        relations,
        closure: ClosurePolicy::AllRemainingZero,
    }
}

/// The plain Lie-superalgebra packaging of the same operators.
fn osp_spl() -> AlgebraSpec {
    let short = "ospspl";
    let mut relations = vec![
        rel(format!("{short}.SsSs"), OpExpr::comm(lbl("Ss-"), lbl("Ss+")), vec![(Coeff::int(-2), "Sc")]),
        rel(
            format!("{short}.BsBs"),
            OpExpr::acomm(lbl("Bs-"), lbl("Bs+")),
            vec![(Coeff::int(2), "N+Id"), (Coeff::int(-2), "Sc")],
        ),
        rel(
            format!("{short}.Bsq.comm"),
            OpExpr::comm(lbl("Bs-^2"), lbl("Bs+^2")),
            vec![(Coeff::int(4), "N+Id"), (Coeff::int(-4), "Sc")],
        ),
        rel0(format!("{short}.N.Sc"), OpExpr::comm(lbl("N+Id"), lbl("Sc"))),
    ];
    for z in SIGNS {
        let zs = sgn(z);
        relations.push(rel(
            format!("{short}.N.Bs[{zs}]"),
            OpExpr::comm(lbl("N+Id"), lbl(&format!("Bs{zs}"))),
            vec![(Coeff::int(z as i64), format!("Bs{zs}"))],
        ));
        relations.push(rel(
            format!("{short}.N.Ss[{zs}]"),
            OpExpr::comm(lbl("N+Id"), lbl(&format!("Ss{zs}"))),
            vec![(Coeff::int(z as i64), format!("Ss{zs}"))],
        ));
        relations.push(rel(
            format!("{short}.N.Bsq[{zs}]"),
            OpExpr::comm(lbl("N+Id"), lbl(&format!("Bs{zs}^2"))),
            vec![(Coeff::int(2 * z as i64), format!("Bs{zs}^2"))],
        ));
        relations.push(rel(
            format!("{short}.Sc.Ss[{zs}]"),
            OpExpr::comm(lbl("Sc"), lbl(&format!("Ss{zs}"))),
            vec![(Coeff::int(z as i64), format!("Ss{zs}"))],
        ));
        relations.push(rel0(
            format!("{short}.Sc.Bs[{zs}]"),
            OpExpr::comm(lbl("Sc"), lbl(&format!("Bs{zs}"))),
        ));
        relations.push(
            rel(
                format!("{short}.Bs.sq[{zs}]"),
                OpExpr::acomm(lbl(&format!("Bs{zs}")), lbl(&format!("Bs{zs}"))),
                vec![(Coeff::int(2), format!("Bs{zs}^2"))],
            )
            .expanded(),
        );
        relations.push(rel(
            format!("{short}.Bsq.Bs[{zs}]"),
            OpExpr::comm(lbl(&format!("Bs{}^2", sgn(-z))), lbl(&format!("Bs{zs}"))),
            vec![(Coeff::int(2 * z as i64), format!("Bs{}", sgn(-z)))],
        ));
        for x in SIGNS {
            relations.push(rel0(
                format!("{short}.series[{zs},{}]", sgn(x)),
                OpExpr::comm(lbl(&format!("Ss{zs}")), lbl(&format!("Bs{}", sgn(x)))),
            ));
        }
    }
    AlgebraSpec {
        name: "osp(1|2)+spl(2)".into(),
        grading_len: 1,
        dim: 3,
        generators: vec![
            gen("N+Id", "0"),
            gen("Sc", "0"),
            gen("Ss-", "0"),
            gen("Ss+", "0"),
            gen("Bs-^2", "0"),
            gen("Bs+^2", "0"),
            gen("Bs-", "1"),
            gen("Bs+", "1"),
        ],
        aux: vec![],
        relations,
        closure: ClosurePolicy::AllRemainingZero,
    }
}

fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn third(j: usize, k: usize) -> usize {
    3 - j - k
}

fn z2cubed() -> AlgebraSpec {
    let mut relations = vec![
        rel("z2c.SsSs".into(), OpExpr::acomm(lbl("Ss-"), lbl("Ss+")), vec![(Coeff::int(1), "Id")]),
        rel(
            "z2c.beta.beta".into(),
            OpExpr::acomm(lbl("beta"), lbl("beta")),
            vec![(Coeff::int(2), "Id")],
        ),
    ];
    let s2mw = Coeff::sqrt_2mw(1, 1);
    let neg_s2mw = Coeff::sqrt_2mw(-1, 1);
    for j in 0..3usize {
        let tj = j + 1;
        relations.push(rel(
            format!("z2c.BB[{tj}]"),
            OpExpr::comm(lbl(&format!("Bs{tj}-")), lbl(&format!("Bs{tj}+"))),
            vec![(Coeff::int(1), "Id")],
        ));
        relations.push(rel(
            format!("z2c.HH[{tj}]"),
            OpExpr::acomm(lbl(&format!("H_{tj}")), lbl(&format!("H_{tj}"))),
            vec![(Coeff::mw(4, 1, 1, 1), format!("N_{tj}"))],
        ));
        relations.push(rel(
            format!("z2c.bHbH[{tj}]"),
            OpExpr::acomm(lbl(&format!("bH_{tj}")), lbl(&format!("bH_{tj}"))),
            vec![(Coeff::mw(4, 1, 1, 1), format!("N_{tj}"))],
        ));
        // {H_j, Ss±} and component ladders
        relations.push(rel(
            format!("z2c.H.Ss-[{tj}]"),
            OpExpr::acomm(lbl(&format!("H_{tj}")), lbl("Ss-")),
            vec![(s2mw, format!("Bs{tj}-"))],
        ));
        relations.push(rel(
            format!("z2c.bH.Ss-[{tj}]"),
            OpExpr::acomm(lbl(&format!("bH_{tj}")), lbl("Ss-")),
            vec![(neg_s2mw, format!("Bs{tj}-"))],
        ));
        relations.push(rel(
            format!("z2c.H.Ss+[{tj}]"),
            OpExpr::acomm(lbl(&format!("H_{tj}")), lbl("Ss+")),
            vec![(s2mw, format!("Bs{tj}+"))],
        ));
        relations.push(rel(
            format!("z2c.bH.Ss+[{tj}]"),
            OpExpr::acomm(lbl(&format!("bH_{tj}")), lbl("Ss+")),
            vec![(s2mw, format!("Bs{tj}+"))],
        ));
        relations.push(rel(
            format!("z2c.H.Bs-[{tj}]"),
            OpExpr::comm(lbl(&format!("H_{tj}")), lbl(&format!("Bs{tj}-"))),
            vec![(neg_s2mw, "Ss-")],
        ));
        relations.push(rel(
            format!("z2c.bH.Bs-[{tj}]"),
            OpExpr::comm(lbl(&format!("bH_{tj}")), lbl(&format!("Bs{tj}-"))),
            vec![(neg_s2mw, "Ss-")],
        ));
        relations.push(rel(
            format!("z2c.H.Bs+[{tj}]"),
            OpExpr::comm(lbl(&format!("H_{tj}")), lbl(&format!("Bs{tj}+"))),
            vec![(s2mw, "Ss+")],
        ));
        relations.push(rel(
            format!("z2c.bH.Bs+[{tj}]"),
            OpExpr::comm(lbl(&format!("bH_{tj}")), lbl(&format!("Bs{tj}+"))),
            vec![(neg_s2mw, "Ss+")],
        ));
        // [L_j S_j, HxH_j] = (N_{j+1} - N_{j+2})/2, cyclic
        let jp = (j + 1) % 3 + 1;
        let jpp = (j + 2) % 3 + 1;
        relations.push(rel(
            format!("z2c.LS.HxH[{tj}]"),
            OpExpr::comm(lbl(&format!("L{tj}S{tj}")), lbl(&format!("HxH{tj}"))),
            vec![
                (Coeff::rat(1, 2), format!("N_{jp}")),
                (Coeff::rat(-1, 2), format!("N_{jpp}")),
            ],
        ));
        for k in 0..3usize {
            let tk = k + 1;
            // [N_j, H_k] = (d_jk - 1) bH_k etc.
            relations.push(rel(
                format!("z2c.N.H[{tj},{tk}]"),
                OpExpr::comm(lbl(&format!("N_{tj}")), lbl(&format!("H_{tk}"))),
                if j == k {
                    vec![]
                } else {
                    vec![(Coeff::int(-1), format!("bH_{tk}"))]
                },
            ));
            relations.push(rel(
                format!("z2c.N.bH[{tj},{tk}]"),
                OpExpr::comm(lbl(&format!("N_{tj}")), lbl(&format!("bH_{tk}"))),
                if j == k {
                    vec![]
                } else {
                    vec![(Coeff::int(-1), format!("H_{tk}"))]
                },
            ));
            for z in SIGNS {
                let zs = sgn(z);
                relations.push(rel(
                    format!("z2c.N.Bs[{tj},{tk}{zs}]"),
                    OpExpr::comm(lbl(&format!("N_{tj}")), lbl(&format!("Bs{tk}{zs}"))),
                    if j == k {
                        vec![(
                            Coeff::int(z as i64),
                            format!("Bs{tk}{zs}"),
                        )]
                    } else {
                        vec![]
                    },
                ));
            }
            relations.push(rel(
                format!("z2c.N.HxH[{tj},{tk}]"),
                OpExpr::comm(lbl(&format!("N_{tj}")), lbl(&format!("HxH{tk}"))),
                if j == k {
                    vec![]
                } else {
                    vec![(Coeff::int(1), format!("L{tk}S{tk}"))]
                },
            ));
            relations.push(rel(
                format!("z2c.N.LS[{tj},{tk}]"),
                OpExpr::comm(lbl(&format!("N_{tj}")), lbl(&format!("L{tk}S{tk}"))),
                if j == k {
                    vec![]
                } else {
                    vec![(Coeff::int(1), format!("HxH{tk}"))]
                },
            ));
        }
        relations.push(rel(
            format!("z2c.N.Ss-[{tj}]"),
            OpExpr::comm(lbl(&format!("N_{tj}")), lbl("Ss-")),
            vec![(Coeff::int(-1), "Ss-")],
        ));
        relations.push(rel(
            format!("z2c.N.Ss+[{tj}]"),
            OpExpr::comm(lbl(&format!("N_{tj}")), lbl("Ss+")),
            vec![(Coeff::int(1), "Ss+")],
        ));
    }
    // mixed-index rows
    for j in 0..3usize {
        for k in 0..3usize {
            if j == k {
                continue;
            }
            let (tj, tk) = (j + 1, k + 1);
            let l = third(j, k);
            let tl = l + 1;
            let e = epsilon(j, k, l);
            if j < k {
                relations.push(rel(
                    format!("z2c.H.H[{tj},{tk}]"),
                    OpExpr::comm(lbl(&format!("H_{tj}")), lbl(&format!("H_{tk}"))),
                    vec![(Coeff::mw(4 * e, 1, 1, 1), format!("HxH{tl}"))],
                ));
                relations.push(rel(
                    format!("z2c.bH.bH[{tj},{tk}]"),
                    OpExpr::comm(lbl(&format!("bH_{tj}")), lbl(&format!("bH_{tk}"))),
                    vec![(
                        Coeff::mw(-4 * e, 1, 1, 1),
                        format!("HxH{tl}"),
                    )],
                ));
                relations.push(rel(
                    format!("z2c.LS.LS[{tj},{tk}]"),
                    OpExpr::acomm(lbl(&format!("L{tj}S{tj}")), lbl(&format!("L{tk}S{tk}"))),
                    vec![(Coeff::rat(-e, 2), format!("L{tl}S{tl}"))],
                ));
                relations.push(rel(
                    format!("z2c.HxH.HxH[{tj},{tk}]"),
                    OpExpr::acomm(lbl(&format!("HxH{tj}")), lbl(&format!("HxH{tk}"))),
                    vec![(Coeff::rat(-e, 2), format!("L{tl}S{tl}"))],
                ));
            }
            relations.push(rel(
                format!("z2c.H.bH[{tj},{tk}]"),
                OpExpr::comm(lbl(&format!("H_{tj}")), lbl(&format!("bH_{tk}"))),
                vec![(Coeff::mw(4 * e, 1, 1, 1), format!("L{tl}S{tl}"))],
            ));
            relations.push(rel(
                format!("z2c.H.HxH[{tj},{tk}]"),
                OpExpr::acomm(lbl(&format!("H_{tj}")), lbl(&format!("HxH{tk}"))),
                vec![(Coeff::rat(e, 2), format!("bH_{tl}"))],
            ));
            relations.push(rel(
                format!("z2c.bH.LS[{tj},{tk}]"),
                OpExpr::acomm(lbl(&format!("bH_{tj}")), lbl(&format!("L{tk}S{tk}"))),
                vec![(Coeff::rat(-e, 2), format!("bH_{tl}"))],
            ));
            relations.push(rel(
                format!("z2c.H.LS[{tj},{tk}]"),
                OpExpr::acomm(lbl(&format!("H_{tj}")), lbl(&format!("L{tk}S{tk}"))),
                vec![(Coeff::rat(-e, 2), format!("H_{tl}"))],
            ));
            relations.push(rel(
                format!("z2c.bH.HxH[{tj},{tk}]"),
                OpExpr::acomm(lbl(&format!("bH_{tj}")), lbl(&format!("HxH{tk}"))),
                vec![(Coeff::rat(e, 2), format!("H_{tl}"))],
            ));
            for z in SIGNS {
                let zs = sgn(z);
                // {HxH_j, Bs_k±} = ∓(1/2) eps Bs_l± with the minus family
                // flipped against the LS row
                relations.push(rel(
                    format!("z2c.HxH.Bs[{tj},{tk}{zs}]"),
                    OpExpr::acomm(lbl(&format!("HxH{tj}")), lbl(&format!("Bs{tk}{zs}"))),
                    vec![(
                        Coeff::rat(if z < 0 { e } else { -e }, 2),
                        format!("Bs{tl}{zs}"),
                    )],
                ));
                relations.push(rel(
                    format!("z2c.LS.Bs[{tj},{tk}{zs}]"),
                    OpExpr::acomm(lbl(&format!("L{tj}S{tj}")), lbl(&format!("Bs{tk}{zs}"))),
                    vec![(
                        Coeff::rat(-e, 2),
                        format!("Bs{tl}{zs}"),
                    )],
                ));
            }
            relations.push(rel(
                format!("z2c.LS.HxH.cross[{tj},{tk}]"),
                OpExpr::acomm(lbl(&format!("L{tj}S{tj}")), lbl(&format!("HxH{tk}"))),
                vec![(Coeff::rat(e, 2), format!("HxH{tl}"))],
            ));
        }
    }
    // the inhomogeneous Hamiltonian acts through the colour bracket on the
    // homogeneous parts H = H_1 + H_2 + H_3 + m beta
    let h_parts = OpExpr::sum(vec![
        lbl("H_1"),
        lbl("H_2"),
        lbl("H_3"),
        OpExpr::scaled(Coeff::mw(1, 1, 1, 0), lbl("beta")),
    ]);
    let bs_sum = |z: &str| {
        OpExpr::sum(vec![
            lbl(&format!("Bs1{z}")),
            lbl(&format!("Bs2{z}")),
            lbl(&format!("Bs3{z}")),
        ])
    };
    relations.push(rel(
        "z2c.H.Bs-".into(),
        OpExpr::br(h_parts.clone(), bs_sum("-")),
        vec![(Coeff::sqrt_2mw(-3, 1), "Ss-")],
    ));
    relations.push(rel(
        "z2c.H.Bs+".into(),
        OpExpr::br(h_parts.clone(), bs_sum("+")),
        vec![(Coeff::sqrt_2mw(3, 1), "Ss+")],
    ));
    relations.push(rel(
        "z2c.H.Ss-".into(),
        OpExpr::br(h_parts.clone(), lbl("Ss-")),
        vec![(Coeff::sqrt_2mw(1, 1), "Bs-")],
    ));
    relations.push(rel(
        "z2c.H.Ss+".into(),
        OpExpr::br(h_parts, lbl("Ss+")),
        vec![(Coeff::sqrt_2mw(1, 1), "Bs+")],
    ));
    // recomposition of the full operators from the components
    relations.push(rel(
        "z2c.recompose.H".into(),
        OpExpr::sum(vec![
            lbl("H_1"),
            lbl("H_2"),
            lbl("H_3"),
            OpExpr::scaled(Coeff::mw(1, 1, 1, 0), lbl("beta")),
        ]),
        vec![(Coeff::int(1), "H")],
    ));
    relations.push(rel(
        "z2c.recompose.N".into(),
        OpExpr::sum(vec![
            lbl("N_1"),
            lbl("N_2"),
            lbl("N_3"),
            lbl("beta"),
            OpExpr::scaled(Coeff::int(-1), lbl("Id")),
        ]),
        vec![(Coeff::int(1), "N")],
    ));
    relations.push(rel("z2c.recompose.Bs-".into(), bs_sum("-"), vec![(Coeff::int(1), "Bs-")]));
    relations.push(rel("z2c.recompose.Bs+".into(), bs_sum("+"), vec![(Coeff::int(1), "Bs+")]));

    let mut generators = vec![gen("Id", "000"), gen("N_1", "000"), gen("N_2", "000"), gen("N_3", "000")];
    generators.push(gen("beta", "111"));
    generators.push(gen("Ss-", "111"));
    generators.push(gen("Ss+", "111"));
    let sector = ["110", "101", "011"];
    let h_sector = ["001", "010", "100"];
    for j in 0..3usize {
        let tj = j + 1;
        generators.push(gen(&format!("H_{tj}"), h_sector[j]));
        generators.push(gen(&format!("bH_{tj}"), h_sector[j]));
        generators.push(gen(&format!("Bs{tj}-"), sector[j]));
        generators.push(gen(&format!("Bs{tj}+"), sector[j]));
        generators.push(gen(&format!("HxH{tj}"), sector[j]));
        generators.push(gen(&format!("L{tj}S{tj}"), sector[j]));
    }
    AlgebraSpec {
        name: "z2cubed".into(),
        grading_len: 3,
        dim: 3,
        generators,
        aux: vec![],
        relations,
        closure: ClosurePolicy::AllRemainingZero,
    }
}

/// All builtin algebra presentations.
pub fn builtin_specs() -> Vec<AlgebraSpec> {
    vec![
        bfa11(),
        pso32(),
        bfa21(),
        pso34('+'),
        pso34('-'),
        osp_sl(),
        osp_gl(),
        osp_spl(),
        z2cubed(),
    ]
}

pub fn spec_by_name(name: &str) -> Option<AlgebraSpec> {
    builtin_specs().into_iter().find(|s| s.name == name)
}

/// Hamiltonian/ladder relation sets that live outside any single algebra
/// presentation (plain-bracket identities per dimension).
pub fn ladder_relations(dim: usize) -> Vec<RelationSchema> {
    match dim {
        1 => vec![],
        2 => ladder_relations_2d(),
        3 => ladder_relations_3d(),
        _ => vec![],
    }
}

fn ladder_relations_2d() -> Vec<RelationSchema> {
    let mut out = Vec::new();
    for j in 1..=2usize {
        for z in SIGNS {
            let zs = sgn(z);
            out.push(rel0(
                format!("dim2.H.c[{j}{zs}]"),
                OpExpr::comm_plain(lbl("H"), lbl(&format!("c{j}{zs}"))),
            ));
            out.push(rel(
                format!("dim2.N.c[{j}{zs}]"),
                OpExpr::comm_plain(lbl("N"), lbl(&format!("c{j}{zs}"))),
                vec![(Coeff::int(z as i64), format!("c{j}{zs}"))],
            ));
            out.push(rel(
                format!("dim2.CLS.c[{j}{zs}]"),
                OpExpr::comm_plain(lbl("CLS"), lbl(&format!("c{j}{zs}"))),
                vec![(Coeff::int(-z as i64), format!("c{j}{zs}"))],
            ));
            out.push(rel(
                format!("dim2.H2.a[{j}{zs}]"),
                OpExpr::comm_plain(lbl("Hsq"), lbl(&format!("a{j}{zs}"))),
                vec![(
                    Coeff::mw(4 * z as i64, 1, 1, 1),
                    format!("a{j}{zs}"),
                )],
            ));
            out.push(rel(
                format!("dim2.N.a[{j}{zs}]"),
                OpExpr::comm_plain(lbl("N"), lbl(&format!("a{j}{zs}"))),
                vec![(Coeff::int(z as i64), format!("a{j}{zs}"))],
            ));
            out.push(rel(
                format!("dim2.CLS.a[{j}{zs}]"),
                OpExpr::comm_plain(lbl("CLS"), lbl(&format!("a{j}{zs}"))),
                vec![(Coeff::int(z as i64), format!("a{j}{zs}"))],
            ));
            out.push(rel(
                format!("dim2.H2.s[{j}{zs}]"),
                OpExpr::comm_plain(lbl("Hsq"), lbl(&format!("s{j}{zs}"))),
                vec![(
                    Coeff::mw(4 * z as i64, 1, 1, 1),
                    format!("s{j}{zs}"),
                )],
            ));
            out.push(rel(
                format!("dim2.interleave.a[{j}{zs}]"),
                OpExpr::comm_plain(lbl("H"), lbl(&format!("a{j}{zs}"))),
                vec![(
                    Coeff::sqrt_4mw(z as i64, 1),
                    format!("s{j}{zs}"),
                )],
            ));
            out.push(rel(
                format!("dim2.interleave.s[{j}{zs}]"),
                OpExpr::acomm_plain(lbl("H"), lbl(&format!("s{j}{zs}"))),
                vec![(
                    Coeff::sqrt_4mw(1, 1),
                    format!("a{j}{zs}"),
                )],
            ));
        }
        // same-mode canonical pairs
        out.push(rel(
            format!("dim2.canonical.s[{j}]"),
            OpExpr::acomm_plain(lbl(&format!("s{j}-")), lbl(&format!("s{j}+"))),
            vec![(Coeff::int(1), "Id")],
        ));
        out.push(rel(
            format!("dim2.canonical.a[{j}]"),
            OpExpr::comm_plain(lbl(&format!("a{j}-")), lbl(&format!("a{j}+"))),
            vec![(Coeff::int(1), "Id")],
        ));
        out.push(rel(
            format!("dim2.canonical.c[{j}]"),
            OpExpr::comm_plain(lbl(&format!("c{j}-")), lbl(&format!("c{j}+"))),
            vec![(Coeff::int(1), "Id")],
        ));
        // same-j bilinears that block parastatistics
        out.push(rel(
            format!("dim2.ss.same[{j}]"),
            OpExpr::comm_plain(lbl(&format!("s{j}+")), lbl(&format!("s{j}-"))),
            vec![(Coeff::int(-1), "beta")],
        ));
        out.push(rel(
            format!("dim2.aa.same[{j}]"),
            OpExpr::acomm_plain(lbl(&format!("a{j}+")), lbl(&format!("a{j}-"))),
            vec![
                (Coeff::int(1), "N"),
                (Coeff::int(1), "CLS"),
                (Coeff::int(1), "beta"),
                (Coeff::rat(1, 2), "Id"),
            ],
        ));
        out.push(rel(
            format!("dim2.cc.same[{j}]"),
            OpExpr::acomm_plain(lbl(&format!("c{j}+")), lbl(&format!("c{j}-"))),
            vec![
                (Coeff::int(1), "N"),
                (Coeff::int(-1), "CLS"),
                (Coeff::rat(1, 2), "Id"),
            ],
        ));
        // Hamiltonian decomposition through either mode
        out.push(rel(
            format!("dim2.H.decomp[{j}]"),
            OpExpr::sum(vec![
                OpExpr::scaled(
                    Coeff::sqrt_4mw(1, 1),
                    OpExpr::prod(lbl(&format!("a{j}+")), lbl(&format!("s{j}-"))),
                ),
                OpExpr::scaled(
                    Coeff::sqrt_4mw(1, 1),
                    OpExpr::prod(lbl(&format!("a{j}-")), lbl(&format!("s{j}+"))),
                ),
                OpExpr::scaled(Coeff::mw(-2, 1, 1, 0), lbl("Sc")),
            ]),
            vec![(Coeff::int(1), "H")],
        ));
    }
    // nonzero cross-mode witnesses, all equal to 2 i beta S0
    out.push(rel(
        "dim2.witness.s".into(),
        OpExpr::acomm_plain(lbl("s1-"), lbl("s2+")),
        vec![(Coeff::imag(2, 1), "bS0")],
    ));
    out.push(rel(
        "dim2.witness.a".into(),
        OpExpr::comm_plain(lbl("a1-"), lbl("a2+")),
        vec![(Coeff::imag(2, 1), "bS0")],
    ));
    out.push(rel(
        "dim2.witness.c".into(),
        OpExpr::comm_plain(lbl("c1-"), lbl("c2+")),
        vec![(Coeff::imag(-2, 1), "bS0")],
    ));
    // conserved quantities
    for q in ["N", "CLS", "J", "bS0"] {
        out.push(rel0(
            format!("dim2.conserved[{q}]"),
            OpExpr::comm_plain(lbl("H"), lbl(q)),
        ));
    }
    for q in ["L0", "S0"] {
        out.push(rel0(
            format!("dim2.H2conserved[{q}]"),
            OpExpr::comm_plain(lbl("Hsq"), lbl(q)),
        ));
    }
    // Schroedinger piece and the squared Hamiltonian
    out.push(rel(
        "dim2.hsch.decomp".into(),
        lbl("Hsch"),
        vec![
            (Coeff::mw(1, 1, 0, 1), "N"),
            (Coeff::mw(1, 2, 0, 1), "beta"),
            (Coeff::mw(1, 2, 0, 1), "Id"),
        ],
    ));
    out.push(rel(
        "dim2.H2.decomp".into(),
        lbl("Hsq"),
        vec![
            (Coeff::mw(2, 1, 1, 1), "N"),
            (Coeff::mw(2, 1, 1, 1), "CLS"),
            (Coeff::mw(1, 1, 1, 1), "Id"),
            (Coeff::mw(1, 1, 2, 0), "Id"),
        ],
    ));
    out.push(rel(
        "dim2.H2.viaj1".into(),
        OpExpr::sum(vec![
            OpExpr::scaled(
                Coeff::mw(2, 1, 1, 1),
                OpExpr::acomm_plain(lbl("a1-"), lbl("a1+")),
            ),
            OpExpr::scaled(
                Coeff::mw(-2, 1, 1, 1),
                OpExpr::comm_plain(lbl("s1-"), lbl("s1+")),
            ),
            OpExpr::scaled(Coeff::mw(1, 1, 2, 0), lbl("Id")),
        ]),
        vec![(Coeff::int(1), "Hsq")],
    ));
    // number operator in both presentations
    let mut n_terms = Vec::new();
    for j in 1..=2 {
        n_terms.push(OpExpr::prod(lbl(&format!("b{j}+")), lbl(&format!("b{j}-"))));
        n_terms.push(OpExpr::scaled(
            Coeff::rat(1, 2),
            OpExpr::prod(lbl(&format!("s{j}+")), lbl(&format!("s{j}-"))),
        ));
    }
    out.push(rel(
        "dim2.N.bs".into(),
        OpExpr::sum(n_terms),
        vec![(Coeff::int(1), "N")],
    ));
    let mut n_terms = Vec::new();
    for j in 1..=2 {
        for fam in ["a", "c", "s"] {
            n_terms.push(OpExpr::scaled(
                Coeff::rat(1, 2),
                OpExpr::prod(lbl(&format!("{fam}{j}+")), lbl(&format!("{fam}{j}-"))),
            ));
        }
    }
    out.push(rel(
        "dim2.N.acs".into(),
        OpExpr::sum(n_terms),
        vec![(Coeff::int(1), "N")],
    ));
    out
}

fn ladder_relations_3d() -> Vec<RelationSchema> {
    let mut out = Vec::new();
    for q in ["N", "CLS", "J1", "J2", "J3", "J^2", "S^2"] {
        out.push(rel0(
            format!("dim3.conserved[{q}]"),
            OpExpr::comm_plain(lbl("H"), lbl(q)),
        ));
    }
    for q in ["L^2", "beta"] {
        out.push(rel0(
            format!("dim3.H2conserved[{q}]"),
            OpExpr::comm_plain(lbl("Hsq"), lbl(q)),
        ));
    }
    // the conserved set is mutually commuting
    let commuting = ["N", "CLS", "S^2", "J^2", "L^2", "beta"];
    for (i, a) in commuting.iter().enumerate() {
        for b in commuting.iter().skip(i + 1) {
            out.push(rel0(
                format!("dim3.commuting[{a},{b}]"),
                OpExpr::comm_plain(lbl(a), lbl(b)),
            ));
        }
    }
    // su(2) towers
    for (fam, gens) in [("L", ["L1", "L2", "L3"]), ("S", ["S1", "S2", "S3"]), ("J", ["J1", "J2", "J3"])]
    {
        for i in 0..3usize {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            out.push(rel(
                format!("dim3.su2.{fam}[{i}]"),
                OpExpr::comm_plain(lbl(gens[i]), lbl(gens[j])),
                vec![(Coeff::imag(1, 1), gens[k])],
            ));
        }
    }
    out.push(rel(
        "dim3.S^2".into(),
        lbl("S^2"),
        vec![(Coeff::rat(3, 4), "Id")],
    ));
    // spin-projected ladder structure
    for z in SIGNS {
        let zs = sgn(z);
        out.push(rel(
            format!("dim3.N.Bs[{zs}]"),
            OpExpr::comm_plain(lbl("N"), lbl(&format!("Bs{zs}"))),
            vec![(Coeff::int(z as i64), format!("Bs{zs}"))],
        ));
        out.push(rel(
            format!("dim3.N.Ss[{zs}]"),
            OpExpr::comm_plain(lbl("N"), lbl(&format!("Ss{zs}"))),
            vec![(Coeff::int(z as i64), format!("Ss{zs}"))],
        ));
        out.push(rel0(
            format!("dim3.beta.Bs[{zs}]"),
            OpExpr::comm_plain(lbl("beta"), lbl(&format!("Bs{zs}"))),
        ));
        out.push(rel0(
            format!("dim3.beta.Ss[{zs}]"),
            OpExpr::acomm_plain(lbl("beta"), lbl(&format!("Ss{zs}"))),
        ));
        out.push(rel0(
            format!("dim3.L2.Ss[{zs}]"),
            OpExpr::comm_plain(lbl("L^2"), lbl(&format!("Ss{zs}"))),
        ));
        for fam in ["Bs", "Ss"] {
            out.push(rel0(
                format!("dim3.J2.{fam}[{zs}]"),
                OpExpr::comm_plain(lbl("J^2"), lbl(&format!("{fam}{zs}"))),
            ));
            out.push(rel0(
                format!("dim3.CLS.{fam}[{zs}]"),
                OpExpr::acomm_plain(lbl("CLS"), lbl(&format!("{fam}{zs}"))),
            ));
        }
    }
    out.push(rel(
        "dim3.H.decomp".into(),
        OpExpr::sum(vec![
            OpExpr::scaled(Coeff::sqrt_2mw(1, 1), OpExpr::prod(lbl("Bs+"), lbl("Ss-"))),
            OpExpr::scaled(Coeff::sqrt_2mw(1, 1), OpExpr::prod(lbl("Bs-"), lbl("Ss+"))),
            OpExpr::scaled(Coeff::mw(-2, 1, 1, 0), lbl("Sc")),
        ]),
        vec![(Coeff::int(1), "H")],
    ));
    out.push(rel(
        "dim3.H2.decomp".into(),
        lbl("Hsq"),
        vec![
            (Coeff::mw(2, 1, 1, 1), "N"),
            (Coeff::mw(2, 1, 1, 1), "CLS"),
            (Coeff::mw(2, 1, 1, 1), "Id"),
            (Coeff::mw(1, 1, 2, 0), "Id"),
        ],
    ));
    for z in SIGNS {
        let zs = sgn(z);
        out.push(rel(
            format!("dim3.Tsq[{zs}]"),
            OpExpr::prod(lbl(&format!("T{zs}")), lbl(&format!("T{zs}"))),
            vec![(Coeff::int(1), format!("Bs{zs}^2"))],
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs_have_expected_shapes() {
        let specs = builtin_specs();
        assert_eq!(specs.len(), 9);
        let names: Vec<_> = specs.iter().map(|s| s.name.as_str()).collect();
        assert!(names.contains(&"pso(3|2)"));
        assert!(names.contains(&"z2cubed"));
        let pso32 = spec_by_name("pso(3|2)").unwrap();
        assert_eq!(pso32.generators.len(), 12);
        let sectors: Vec<_> = pso32.generators.iter().map(|(_, d)| d.to_string()).collect();
        assert_eq!(sectors.iter().filter(|s| *s == "00").count(), 4);
        assert_eq!(sectors.iter().filter(|s| *s == "01").count(), 4);
        assert_eq!(sectors.iter().filter(|s| *s == "10").count(), 2);
        assert_eq!(sectors.iter().filter(|s| *s == "11").count(), 2);
        // the colour algebra without the enlargement has an empty 11-sector
        let ospsl = spec_by_name("osp01(1|2)+sl10(1|1)").unwrap();
        assert!(ospsl.generators.iter().all(|(_, d)| d.to_string() != "11"));
        // H_1 lives in the 001-sector of the Z2^3 algebra
        let z2c = spec_by_name("z2cubed").unwrap();
        let h1 = z2c.generators.iter().find(|(l, _)| l == "H_1").unwrap();
        assert_eq!(h1.1.to_string(), "001");
        assert_eq!(z2c.generators.len(), 25);
    }

    #[test]
    fn specs_roundtrip_through_json() {
        for spec in builtin_specs() {
            let json = spec.to_json();
            let back = AlgebraSpec::from_json(&json).unwrap();
            assert_eq!(back.name, spec.name);
            assert_eq!(back.generators, spec.generators);
            assert_eq!(back.relations.len(), spec.relations.len());
            for (a, b) in back.relations.iter().zip(&spec.relations) {
                assert_eq!(a.lhs, b.lhs, "{}", a.id);
                assert_eq!(a.rhs, b.rhs, "{}", a.id);
            }
        }
    }
}
