//! End-to-end acceptance checks. Each test prints one pass/fail line; the
//! whole target is meant to stay well under a minute.

use dqgm_core::dqg::{cg_isometry, fusion_targets};
use dqgm_core::{
    bimodule_act, convolve, dual_unit, factor, slice, slice_space_dimension, verify_left_invariance,
    verify_mhopf_axioms, BlockAlgebra, BlockIndex, BlockRule, DQGDescriptor, DenseMatrix, Element,
    Factorization, GroupModel, HaarData, IntFormula, IntTerm, Leg, Multiplier, RankPolicy,
    ReducedFunctional, Scalar, Side, TensorMultiplier, WindowFunctional,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(name: &str, ok: bool) {
    println!("criterion {name}: {}", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {name} failed");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_ratio(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_ratio(r.gen_range(-6..=6), r.gen_range(1..=4))
}

fn z_dqg() -> DQGDescriptor {
    DQGDescriptor::dual_of_group(GroupModel::Integers)
}

fn rand_z_multiplier(alg: &BlockAlgebra, r: &mut ChaCha8Rng) -> Multiplier {
    let mut terms = Vec::new();
    for _ in 0..r.gen_range(1..=2) {
        let term = match r.gen_range(0..3) {
            0 => IntTerm::Power(r.gen_range(0..=2)),
            1 => IntTerm::CharacterExact {
                quarter_turns: r.gen_range(0..4),
            },
            _ => IntTerm::PointMass(r.gen_range(-3..=3)),
        };
        terms.push((rand_ratio(r), term));
    }
    Multiplier::new(alg, BlockRule::IntFormula(IntFormula { terms }))
}

fn rand_z_functional(haar: &HaarData, r: &mut ChaCha8Rng) -> ReducedFunctional {
    let alg = haar.algebra();
    let mut rep = Element::zero(alg);
    for _ in 0..r.gen_range(1..=3) {
        let g = BlockIndex::Int(r.gen_range(-6..=6));
        rep = rep
            .add(&Element::delta(alg, g).scale(&rand_ratio(r)))
            .unwrap();
    }
    ReducedFunctional::left_of_phi(haar, rep)
}

/// (ζ⊗ξ)(Y) computed directly from the block functionals, with no slice
/// map involved: Σ_{β,α} tr((G_ζ(β) ⊗ G_ξ(α)) · Y(β,α)).
fn pair_evaluate(
    zeta: &ReducedFunctional,
    xi: &ReducedFunctional,
    y: &TensorMultiplier,
) -> Scalar {
    let mut total = Scalar::zero();
    for beta in zeta.support() {
        let g_b = zeta.block_functional(&beta);
        for alpha in xi.support() {
            let g_a = xi.block_functional(&alpha);
            let block = y.block(&beta, &alpha);
            total = &total + &g_b.kron(&g_a).matmul(&block).trace();
        }
    }
    total
}

#[test]
fn criterion_01_slice_uniqueness() {
    let dqg = z_dqg();
    let alg = dqg.algebra();
    let haar = dqg.haar();
    let mut r = rng(1);
    let mut ok = true;
    for _ in 0..10 {
        let mut terms = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            terms.push((rand_z_multiplier(alg, &mut r), rand_z_multiplier(alg, &mut r)));
        }
        let y = TensorMultiplier::sum_of_elementary(terms);
        for _ in 0..10 {
            let xi = rand_z_functional(haar, &mut r);
            let s = slice(&y, &xi, Leg::Right);
            for _ in 0..20 {
                let zeta = rand_z_functional(haar, &mut r);
                let lhs = pair_evaluate(&zeta, &xi, &y);
                let rhs = zeta.evaluate_on_multiplier(&s).unwrap();
                ok &= (&lhs - &rhs).is_zero();
            }
        }
    }
    report("1 (slice uniqueness)", ok);
}

#[test]
fn criterion_02_s3_convolution_table() {
    let group = GroupModel::symmetric(3);
    let dqg = DQGDescriptor::dual_of_group(group.clone());
    let haar = dqg.haar();
    let alg = dqg.algebra();
    let elements = group.elements().unwrap();
    let basis: Vec<ReducedFunctional> = elements
        .iter()
        .map(|g| ReducedFunctional::left_of_phi(haar, Element::delta(alg, g.clone())))
        .collect();
    let mut ok = true;
    // full table against the Cayley-table oracle
    for (i, g) in elements.iter().enumerate() {
        for (j, h) in elements.iter().enumerate() {
            let conv = convolve(&basis[i], &basis[j], &dqg).unwrap();
            let expected = Element::delta(alg, group.multiply(g, h).unwrap());
            ok &= conv.representative() == &expected;
        }
    }
    // associativity, exhaustively on basis triples
    for a in &basis {
        for b in &basis {
            for c in &basis {
                let lhs = convolve(&convolve(a, b, &dqg).unwrap(), c, &dqg).unwrap();
                let rhs = convolve(a, &convolve(b, c, &dqg).unwrap(), &dqg).unwrap();
                ok &= lhs.representative() == rhs.representative();
            }
        }
    }
    let unit = dual_unit(&dqg).unwrap();
    ok &= unit.representative() == &Element::delta(alg, group.identity());
    report("2 (convolution algebra on dual of S3)", ok);
}

#[test]
fn criterion_03_ideal_property() {
    let group = GroupModel::symmetric(3);
    let dqg = DQGDescriptor::dual_of_group(group.clone());
    let haar = dqg.haar();
    let alg = dqg.algebra();
    let window = alg.window(0);
    let elements = group.elements().unwrap();
    let mut r = rng(3);
    let rand_element = |r: &mut ChaCha8Rng| {
        let blocks: Vec<_> = window
            .iter()
            .map(|idx| (idx.clone(), DenseMatrix::scalar_matrix(1, &rand_ratio(r))))
            .collect();
        Element::from_blocks(alg, blocks)
    };
    let mut ok = true;
    for _ in 0..10 {
        let a = rand_element(&mut r);
        let b = rand_element(&mut r);
        let f = WindowFunctional::new(
            alg,
            window
                .iter()
                .map(|idx| (idx.clone(), DenseMatrix::scalar_matrix(1, &rand_ratio(&mut r))))
                .collect::<Vec<_>>(),
        );
        let gamma = bimodule_act(&a, &f, &b, haar).unwrap();
        let xi = ReducedFunctional::left_of_phi(haar, rand_element(&mut r));
        for (left, right) in [(&gamma, &xi), (&xi, &gamma)] {
            let conv = convolve(left, right, &dqg).unwrap();
            for g in &elements {
                // oracle: (left ⊗ right)(δ(δ_g)) = Σ_{uv = g} left(δ_u)·right(δ_v)
                let mut direct = Scalar::zero();
                for u in &elements {
                    let v = group
                        .multiply(&group.inverse(u).unwrap(), g)
                        .unwrap();
                    let lu = left.evaluate(&Element::delta(alg, u.clone())).unwrap();
                    let rv = right.evaluate(&Element::delta(alg, v)).unwrap();
                    direct = &direct + &(&lu * &rv);
                }
                let via_rep = conv.evaluate(&Element::delta(alg, g.clone())).unwrap();
                ok &= (&direct - &via_rep).is_zero();
            }
        }
    }
    report("3 (reduced functionals form an ideal)", ok);
}

#[test]
fn criterion_04_modular_automorphism() {
    let alg = BlockAlgebra::finite(vec![2]);
    let idx = BlockIndex::Fin(0);
    let haar = HaarData::from_table(
        &alg,
        [(
            idx.clone(),
            (
                Scalar::one(),
                vec![Scalar::from_int(1), Scalar::from_int(2)],
            ),
        )],
    );
    let mut ok = true;
    for (i, j) in (0..2).flat_map(|i| (0..2).map(move |j| (i, j))) {
        for (k, l) in (0..2).flat_map(|k| (0..2).map(move |l| (k, l))) {
            let a = Element::matrix_unit(&alg, idx.clone(), i, j);
            let b = Element::matrix_unit(&alg, idx.clone(), k, l);
            let lhs = haar.phi(&a.multiply(&b).unwrap());
            let rhs = haar.phi(&b.multiply(&haar.modular_apply(&a)).unwrap());
            ok &= (&lhs - &rhs).is_zero();
        }
    }
    let e12 = Element::matrix_unit(&alg, idx.clone(), 0, 1);
    ok &= haar.modular_apply(&e12) == e12.scale(&Scalar::from_ratio(1, 2));
    report("4 (modular automorphism)", ok);
}

fn three_term_tensor(alg: &BlockAlgebra) -> TensorMultiplier {
    let formula = |terms: Vec<(Scalar, IntTerm)>| {
        Multiplier::new(alg, BlockRule::IntFormula(IntFormula { terms }))
    };
    let one = formula(vec![(Scalar::one(), IntTerm::Power(0))]);
    let chi = formula(vec![(
        Scalar::one(),
        IntTerm::CharacterExact { quarter_turns: 1 },
    )]);
    let sign = formula(vec![(
        Scalar::one(),
        IntTerm::CharacterExact { quarter_turns: 2 },
    )]);
    let coord = formula(vec![(Scalar::one(), IntTerm::Power(1))]);
    TensorMultiplier::sum_of_elementary(vec![
        (one.clone(), coord),
        (chi, one.clone()),
        (sign, chi_like(alg)),
    ])
}

fn chi_like(alg: &BlockAlgebra) -> Multiplier {
    Multiplier::new(
        alg,
        BlockRule::IntFormula(IntFormula {
            terms: vec![(
                Scalar::from_int(3),
                IntTerm::CharacterExact { quarter_turns: 3 },
            )],
        }),
    )
}

fn reconstructs(f: &Factorization, y: &TensorMultiplier, probes: &[(BlockIndex, BlockIndex)]) -> bool {
    probes.iter().all(|(beta, alpha)| {
        let mut sum = DenseMatrix::zeros(
            y.left_algebra().block_dim(beta) * y.right_algebra().block_dim(alpha),
            y.left_algebra().block_dim(beta) * y.right_algebra().block_dim(alpha),
        );
        for (x, w) in &f.terms {
            sum = sum.add(&x.block(beta).kron(&w.block(alpha)));
        }
        sum.max_abs_diff(&y.block(beta, alpha)) == 0.0
    })
}

fn z_probe_grid(range: &[i64]) -> Vec<(BlockIndex, BlockIndex)> {
    range
        .iter()
        .flat_map(|&g| range.iter().map(move |&n| (BlockIndex::Int(g), BlockIndex::Int(n))))
        .collect()
}

#[test]
fn criterion_05_factorization_forward() {
    let dqg = z_dqg();
    let alg = dqg.algebra();
    let haar = dqg.haar();
    let policy = RankPolicy::default();
    let y = three_term_tensor(alg);
    let dim = slice_space_dimension(&y, haar, 4, 2, &policy).unwrap();
    let mut ok = dim.dimension == 3 && dim.level <= 2;
    let f = factor(&y, haar, 4, 2, &policy, 1e-7).unwrap();
    ok &= f.terms.len() == 3 && f.max_error == 0.0;
    // final window plus a disjoint far-out probe window
    ok &= reconstructs(&f, &y, &z_probe_grid(&[-8, -3, 0, 5, 8]));
    ok &= reconstructs(&f, &y, &z_probe_grid(&[-101, -100, 100, 101]));
    report("5 (three-term factorization)", ok);
}

#[test]
fn criterion_06_almost_periodicity_cases() {
    let dqg = z_dqg();
    let alg = dqg.algebra();
    let haar = dqg.haar();
    let policy = RankPolicy::default();
    let formula = |terms: Vec<(Scalar, IntTerm)>| {
        Multiplier::new(alg, BlockRule::IntFormula(IntFormula { terms }))
    };
    let mut ok = true;

    // character: one-dimensional slice span, exact χ⊗χ factorization
    let chi = formula(vec![(
        Scalar::one(),
        IntTerm::CharacterExact { quarter_turns: 1 },
    )]);
    let f = factor(&dqg.coproduct_of_multiplier(&chi), haar, 4, 2, &policy, 1e-7).unwrap();
    ok &= f.terms.len() == 1 && f.max_error == 0.0;
    ok &= reconstructs(
        &f,
        &dqg.coproduct_of_multiplier(&chi),
        &z_probe_grid(&[-9, -1, 0, 2, 9]),
    );

    // coordinate: δ(n) = n⊗1 + 1⊗n, dimension two, entries g + n
    let coord = formula(vec![(Scalar::one(), IntTerm::Power(1))]);
    let y = dqg.coproduct_of_multiplier(&coord);
    let f = factor(&y, haar, 4, 2, &policy, 1e-7).unwrap();
    ok &= f.terms.len() == 2 && f.max_error == 0.0;
    for (g, n) in [(-7i64, 2i64), (0, 0), (3, -5), (40, 13)] {
        let mut v = Scalar::zero();
        for (x, w) in &f.terms {
            let xb = x.block(&BlockIndex::Int(g));
            let wb = w.block(&BlockIndex::Int(n));
            v = &v + &(xb.get(0, 0) * wb.get(0, 0));
        }
        ok &= (&v - &Scalar::from_int(g + n)).is_zero();
    }

    // point mass: slice span keeps growing with the window, 2W+1 per level
    let point = formula(vec![(Scalar::one(), IntTerm::PointMass(0))]);
    match slice_space_dimension(&dqg.coproduct_of_multiplier(&point), haar, 4, 2, &policy) {
        Err(dqgm_core::Error::BudgetExceeded { history, .. }) => {
            ok &= history == vec![9, 17, 33, 65];
        }
        _ => ok = false,
    }
    // and the CLI reports it as budget exhaustion with exit status 2
    let scenario = r#"{
      "scalar_mode": "exact",
      "model": { "kind": "dual_of_group", "group": { "name": "integers" } },
      "objects": {
        "point": {
          "type": "multiplier",
          "rule": { "kind": "int_formula", "terms": [{ "term": "point_mass", "at": 0 }] }
        }
      },
      "params": { "multiplier": "point" }
    }"#;
    let path = std::env::temp_dir().join("dqgm-acceptance-point-mass.json");
    std::fs::write(&path, scenario).unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_dqgm"))
        .args(["slice-dim", "--scenario"])
        .arg(&path)
        .output()
        .unwrap();
    ok &= out.status.code() == Some(2);
    let text = String::from_utf8_lossy(&out.stdout);
    ok &= text.contains("budget-exhausted");
    report("6 (almost periodicity: character, coordinate, point mass)", ok);
}

#[test]
fn criterion_07_multiplier_hopf_axioms() {
    let policy = RankPolicy::default();
    let s3 = DQGDescriptor::dual_of_group(GroupModel::symmetric(3));
    let w = s3.algebra().window(0);
    let r = verify_mhopf_axioms(&s3, &w, &w, &policy);
    let mut ok = r.passed() && !r.window_relative;
    let z = z_dqg();
    let rz = verify_mhopf_axioms(&z, &z.algebra().window(1), &z.algebra().window(0), &policy);
    ok &= rz.passed() && rz.window_relative;
    report("7 (multiplier Hopf axioms)", ok);
}

#[test]
fn criterion_08_left_invariance() {
    let mut r = rng(8);
    let mut ok = true;
    for group in [
        GroupModel::Integers,
        GroupModel::symmetric(3),
        GroupModel::cyclic(5),
    ] {
        let dqg = DQGDescriptor::dual_of_group(group);
        let window = dqg.algebra().window(1);
        for _ in 0..20 {
            let mut e = Element::zero(dqg.algebra());
            for _ in 0..3 {
                let idx = window[r.gen_range(0..window.len())].clone();
                e = e
                    .add(&Element::delta(dqg.algebra(), idx).scale(&rand_ratio(&mut r)))
                    .unwrap();
            }
            let inv = verify_left_invariance(&dqg, &e, &window);
            ok &= inv.ok && inv.max_deviation == 0.0;
        }
    }

    let su2 = DQGDescriptor::dual_of_su2(3);
    let window: Vec<BlockIndex> = (0..=3).map(BlockIndex::Nat).collect();
    for _ in 0..10 {
        let mut e = Element::zero(su2.algebra());
        for _ in 0..2 {
            let idx = window[r.gen_range(0..window.len())].clone();
            let n = su2.algebra().block_dim(&idx);
            let m = DenseMatrix::from_fn(n, n, |_, _| {
                Scalar::float(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0))
            });
            e = e.add(&Element::from_blocks(su2.algebra(), [(idx, m)])).unwrap();
        }
        let inv = verify_left_invariance(&su2, &e, &window);
        ok &= inv.ok && inv.max_deviation <= 1e-8;
    }

    // intertwiner completeness per fusion pair: Σ_t V_t V_t† = I
    for t1 in 0..=3u64 {
        for t2 in 0..=3u64 {
            let n = ((t1 + 1) * (t2 + 1)) as usize;
            let mut sum = DenseMatrix::zeros(n, n);
            for t in fusion_targets(t1, t2) {
                let v = cg_isometry(t1, t2, t);
                sum = sum.add(&v.matmul(&v.conj_transpose()));
            }
            ok &= sum.max_abs_diff(&DenseMatrix::identity(n)) <= 1e-9;
        }
    }
    report("8 (left invariance and intertwiner completeness)", ok);
}

#[test]
fn criterion_09_factorization_double_centralizer() {
    let dqg = z_dqg();
    let alg = dqg.algebra();
    let haar = dqg.haar();
    let policy = RankPolicy::default();
    let formula = |terms: Vec<(Scalar, IntTerm)>| {
        Multiplier::new(alg, BlockRule::IntFormula(IntFormula { terms }))
    };
    let chi = formula(vec![(
        Scalar::one(),
        IntTerm::CharacterExact { quarter_turns: 1 },
    )]);
    let coord = formula(vec![(Scalar::one(), IntTerm::Power(1))]);
    let factorizations = [
        factor(&three_term_tensor(alg), haar, 4, 2, &policy, 1e-7).unwrap(),
        factor(&dqg.coproduct_of_multiplier(&chi), haar, 4, 2, &policy, 1e-7).unwrap(),
        factor(&dqg.coproduct_of_multiplier(&coord), haar, 4, 2, &policy, 1e-7).unwrap(),
    ];
    let mut r = rng(9);
    let mut ok = true;
    for f in &factorizations {
        for _ in 0..50 {
            let rand_element = |r: &mut ChaCha8Rng| {
                let mut e = Element::zero(alg);
                for _ in 0..r.gen_range(1..=3) {
                    let g = BlockIndex::Int(r.gen_range(-6..=6));
                    e = e
                        .add(&Element::delta(alg, g).scale(&rand_ratio(r)))
                        .unwrap();
                }
                e
            };
            let a1 = rand_element(&mut r);
            let a2 = rand_element(&mut r);
            for k in 0..f.terms.len() {
                // z_k(a1)·a2 = a1·y_k(a2): z_k and y_k are the two halves
                // of one double centralizer
                let lhs = f.z_apply(k, &a1).unwrap().multiply(&a2).unwrap();
                let rhs = a1
                    .multiply(&f.terms[k].1.apply(&a2, Side::Left).unwrap())
                    .unwrap();
                ok &= lhs == rhs;
            }
        }
    }
    report("9 (double centralizer property of factors)", ok);
}

#[test]
fn criterion_10_normalization_independence() {
    let dqg = z_dqg();
    let alg = dqg.algebra();
    let haar = dqg.haar();
    let scaled = haar.rescaled(&Scalar::from_int(7));
    let policy = RankPolicy::default();
    let formula = |terms: Vec<(Scalar, IntTerm)>| {
        Multiplier::new(alg, BlockRule::IntFormula(IntFormula { terms }))
    };
    let chi = formula(vec![(
        Scalar::one(),
        IntTerm::CharacterExact { quarter_turns: 1 },
    )]);
    let coord = formula(vec![(Scalar::one(), IntTerm::Power(1))]);
    let mut ok = true;
    for x in [&chi, &coord] {
        let y = dqg.coproduct_of_multiplier(x);
        let f1 = factor(&y, haar, 4, 2, &policy, 1e-7).unwrap();
        let f2 = factor(&y, &scaled, 4, 2, &policy, 1e-7).unwrap();
        ok &= f1.terms.len() == f2.terms.len();
        ok &= f1.report.history == f2.report.history;
        // Σ x_k⊗y_k agrees entry by entry on a probe grid
        for (beta, alpha) in z_probe_grid(&[-9, -2, 0, 1, 9]) {
            let sum = |f: &Factorization| {
                let mut s = DenseMatrix::zeros(1, 1);
                for (x, w) in &f.terms {
                    s = s.add(&x.block(&beta).kron(&w.block(&alpha)));
                }
                s
            };
            ok &= sum(&f1) == sum(&f2);
        }
    }
    report("10 (normalization independence)", ok);
}
