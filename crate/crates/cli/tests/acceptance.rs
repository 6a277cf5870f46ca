//! The acceptance checklist. Each test checks one headline claim end to
//! end and prints exactly one `acceptance <name>: PASS`/`FAIL` line.
//! Tolerances are pinned here and nowhere else.

use std::collections::BTreeSet;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;
use universal_subspaces::lie::roots::build_root_system;
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::obstruction::{euler_characteristic_quotient, SubgroupDescriptor};
use universal_subspaces::rep::subspace::Subspace;
use universal_subspaces::rep::Representation;
use universal_subspaces::subalgebra::{
    adjoint_coordinates, contains_positive_system, diagonal_su2_in_su2_squared, full_subalgebra,
    is_maximal_rank, maximal_torus_subalgebra, u2_block_in_su3, SubalgebraSpec,
};
use universal_subspaces::{universality_verdict, SearchConfig};

/// Distance below which an orbit counts as having reached the subspace.
const DIST_TOL: f64 = 1e-6;
/// Allowed deviation of the Levi witness distance from 1/sqrt(2).
const WITNESS_TOL: f64 = 1e-4;
/// Allowed wobble of a certified constant distance along its orbit.
const CONSTANCY_TOL: f64 = 1e-10;

fn usub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usub"))
        .env_remove("USUB_OUT_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Result<Value, String> {
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("stdout is not a report: {e}"))
}

fn conclude(name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(why) => {
            println!("acceptance {name}: FAIL — {why}");
            panic!("acceptance {name} failed: {why}");
        }
    }
}

fn check(cond: bool, why: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.into())
    }
}

fn rows(v: &Value) -> &Vec<Value> {
    v["rows"].as_array().expect("rows array")
}

fn verdict_kind<'a>(v: &'a Value, i: usize) -> &'a Value {
    &v["verdicts"][i]["verdict"]["kind"]
}

#[test]
fn acceptance_su2_hyperplane_classification() {
    let run = || -> Result<(), String> {
        for n in 1..=12usize {
            let out = usub(&["su2-classify", "--n", &n.to_string(), "--samples", "100"]);
            let rep = report(&out).map_err(|e| format!("n={n}: {e}"))?;
            let table = rows(&rep);
            check(table.len() == n + 1, format!("n={n}: {} rows", table.len()))?;
            for (i, row) in table.iter().enumerate() {
                let k = 2 * i as i64 - n as i64;
                check(
                    row["quotient_weight"] == Value::from(k),
                    format!("n={n} i={i}: quotient weight {}", row["quotient_weight"]),
                )?;
                let class = &rep["obstructions"][i]["report"]["class_value"];
                if k != 0 {
                    check(
                        class["coordinates"][0] == Value::from(k)
                            && class["free_rank"] == Value::from(1),
                        format!("n={n} i={i}: class {class}"),
                    )?;
                }
                let expected_vanish = n % 4 == 0 && 2 * i == n;
                check(
                    row["vanishes"] == Value::from(expected_vanish),
                    format!("n={n} i={i}: vanishing {}", row["vanishes"]),
                )?;
                let kind = verdict_kind(&rep, i);
                check(
                    kind["kind"] == "universal",
                    format!("n={n} i={i}: verdict {kind}"),
                )?;
                let worst = kind["max_min_distance"].as_f64().unwrap_or(f64::NAN);
                check(
                    worst < DIST_TOL,
                    format!("n={n} i={i}: worst distance {worst}"),
                )?;
            }
        }
        Ok(())
    };
    conclude("su2-hyperplane-classification", run());
}

#[test]
fn acceptance_kunneth_counterexample() {
    let run = || -> Result<(), String> {
        let out = usub(&["counterexample"]);
        let rep = report(&out)?;
        let top = &rep["obstructions"][0]["report"];
        check(
            top["class_value"]["torsion_orders"] == serde_json::json!([2])
                && top["class_value"]["coordinates"] == serde_json::json!([0])
                && top["vanishes"] == Value::from(true),
            format!("top class {}", top["class_value"]),
        )?;
        check(
            top["bundle"][0] == serde_json::json!({"degree": 2}),
            format!("sphere bundle {}", top["bundle"][0]),
        )?;
        let rp2 = &rep["obstructions"][2]["report"]["class_value"];
        check(
            rp2["coordinates"] == serde_json::json!([1])
                && rp2["torsion_orders"] == serde_json::json!([2]),
            format!("projective class {rp2}"),
        )?;
        check(
            verdict_kind(&rep, 0)["kind"] == "universal",
            format!("verdict {}", verdict_kind(&rep, 0)),
        )
    };
    conclude("kunneth-counterexample", run());
}

#[test]
fn acceptance_euler_localization_agreement() {
    let run = || -> Result<(), String> {
        for (group, sub, chi, loc) in [
            ("su2", "t", 2, Some(2)),
            ("su2", "nt", 1, None),
            ("su3", "t", 6, Some(6)),
        ] {
            let out = usub(&["euler", "--group", group, "--subgroup", sub]);
            let rep = report(&out).map_err(|e| format!("{group}/{sub}: {e}"))?;
            let row = &rows(&rep)[0];
            check(
                row["chi"] == Value::from(chi),
                format!("{group}/{sub}: chi {}", row["chi"]),
            )?;
            match loc {
                Some(l) => check(
                    row["localization"].as_i64().map(i64::abs) == Some(l),
                    format!("{group}/{sub}: localization {}", row["localization"]),
                )?,
                None => check(
                    row["localization"].is_null(),
                    format!("{group}/{sub}: unexpected localization"),
                )?,
            }
        }
        Ok(())
    };
    conclude("euler-localization-agreement", run());
}

#[test]
fn acceptance_schur_borel_universality() {
    let run = || -> Result<(), String> {
        for group in ["su2", "su3"] {
            let out = usub(&["schur", "--group", group, "--samples", "100"]);
            let rep = report(&out).map_err(|e| format!("{group}: {e}"))?;
            let kind = verdict_kind(&rep, 0);
            check(kind["kind"] == "universal", format!("{group}: {kind}"))?;
            let worst = kind["max_min_distance"].as_f64().unwrap_or(f64::NAN);
            check(worst < DIST_TOL, format!("{group}: worst distance {worst}"))?;
            check(
                rep["verdicts"][0]["verdict"]["samples"].as_u64() >= Some(100),
                format!("{group}: only {} samples", rep["verdicts"][0]["verdict"]["samples"]),
            )?;
        }
        Ok(())
    };
    conclude("schur-borel-universality", run());
}

#[test]
fn acceptance_borel_containment_equivalence() {
    let run = || -> Result<(), String> {
        let su3 = GroupSpec::Su3;
        let rs = build_root_system(&su3).map_err(|e| e.to_string())?;
        let positives = rs.positive_roots.clone();
        let neg = |r: &Vec<i64>| -> Vec<i64> { r.iter().map(|&c| -c).collect() };

        let mut sets: Vec<(&str, BTreeSet<Vec<i64>>)> = Vec::new();
        sets.push(("no roots", BTreeSet::new()));
        sets.push((
            "one root pair",
            [positives[0].clone(), neg(&positives[0])].into_iter().collect(),
        ));
        let borel: BTreeSet<Vec<i64>> = positives.iter().cloned().collect();
        let mut p1 = borel.clone();
        p1.insert(neg(&positives[0]));
        let mut p2 = borel.clone();
        p2.insert(neg(&positives[2]));
        sets.push(("standard borel", borel));
        sets.push(("first parabolic", p1));
        sets.push(("second parabolic", p2));
        sets.push(("all roots", rs.roots.iter().cloned().collect()));

        let rep = Arc::new(Representation::complexified_adjoint(&su3).map_err(|e| e.to_string())?);
        let cfg = SearchConfig {
            restarts: 12,
            samples: 6,
            ..SearchConfig::default()
        };
        for (name, set) in &sets {
            let combinatorial = contains_positive_system(&rs, set).map_err(|e| e.to_string())?;
            let killed: BTreeSet<usize> = rep
                .weights()
                .iter()
                .enumerate()
                .filter(|(_, w)| w.iter().any(|&c| c != 0) && !set.contains(*w))
                .map(|(i, _)| i)
                .collect();
            let v = Subspace::weight_complement(rep.clone(), killed, true)
                .map_err(|e| e.to_string())?;
            let verdict = universality_verdict(&rep, &v, &cfg).map_err(|e| e.to_string())?;
            check(
                combinatorial == verdict.is_universal(),
                format!(
                    "{name}: contains-positive-system {combinatorial} vs verdict {:?}",
                    verdict.kind
                ),
            )?;
        }
        check(sets.len() >= 6, "fewer than six root subsets")
    };
    conclude("borel-containment-equivalence", run());
}

#[test]
fn acceptance_maximal_rank_equivalence() {
    let run = || -> Result<(), String> {
        let su2 = GroupSpec::Su2;
        let su3 = GroupSpec::Su3;
        let prod = GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2]);
        let rows: Vec<(&str, GroupSpec, SubalgebraSpec, SubgroupDescriptor)> = vec![
            (
                "t in su(2)",
                su2.clone(),
                maximal_torus_subalgebra(&su2).map_err(|e| e.to_string())?,
                SubgroupDescriptor::maximal_torus(&su2),
            ),
            (
                "full su(2)",
                su2.clone(),
                full_subalgebra(&su2).map_err(|e| e.to_string())?,
                SubgroupDescriptor::whole_group(&su2).map_err(|e| e.to_string())?,
            ),
            (
                "t in su(2)+su(2)",
                prod.clone(),
                maximal_torus_subalgebra(&prod).map_err(|e| e.to_string())?,
                SubgroupDescriptor::maximal_torus(&prod),
            ),
            (
                "diagonal su(2)",
                prod.clone(),
                diagonal_su2_in_su2_squared().map_err(|e| e.to_string())?,
                SubgroupDescriptor::diagonal_su2_in_su2_squared(),
            ),
            (
                "full su(2)+su(2)",
                prod.clone(),
                full_subalgebra(&prod).map_err(|e| e.to_string())?,
                SubgroupDescriptor::whole_group(&prod).map_err(|e| e.to_string())?,
            ),
            (
                "t in su(3)",
                su3.clone(),
                maximal_torus_subalgebra(&su3).map_err(|e| e.to_string())?,
                SubgroupDescriptor::maximal_torus(&su3),
            ),
            (
                "u(2) block in su(3)",
                su3.clone(),
                u2_block_in_su3().map_err(|e| e.to_string())?,
                SubgroupDescriptor::u2_block_in_su3(),
            ),
            (
                "full su(3)",
                su3.clone(),
                full_subalgebra(&su3).map_err(|e| e.to_string())?,
                SubgroupDescriptor::whole_group(&su3).map_err(|e| e.to_string())?,
            ),
        ];
        let cfg = SearchConfig {
            restarts: 12,
            samples: 6,
            ..SearchConfig::default()
        };
        for (name, g, h, desc) in rows {
            let rank_pred = is_maximal_rank(&g, &h).map_err(|e| e.to_string())?;
            let chi = euler_characteristic_quotient(&g, &desc)
                .map_err(|e| e.to_string())?
                .chi;
            let rep = Arc::new(Representation::real_adjoint(&g).map_err(|e| e.to_string())?);
            let coords = adjoint_coordinates(&h).map_err(|e| e.to_string())?;
            let v = Subspace::basis_span(rep.clone(), coords, false).map_err(|e| e.to_string())?;
            let verdict = universality_verdict(&rep, &v, &cfg).map_err(|e| e.to_string())?;
            check(
                rank_pred == (chi > 0) && rank_pred == verdict.is_universal(),
                format!(
                    "{name}: rank {rank_pred}, chi {chi}, verdict {:?}",
                    verdict.kind
                ),
            )?;
        }
        Ok(())
    };
    conclude("maximal-rank-equivalence", run());
}

#[test]
fn acceptance_solvable_witnesses() {
    let run = || -> Result<(), String> {
        let out = usub(&["solvable", "--size", "3", "--trials", "50", "--restarts", "64"]);
        let rep = report(&out)?;
        let table = rows(&rep);
        check(table.len() == 50, format!("{} trials", table.len()))?;
        for row in table {
            let t = &row["trial"];
            let cert = row["certificate"].as_f64().unwrap_or(0.0);
            check(cert > 0.0, format!("trial {t}: certificate {cert}"))?;
            let spread = row["constancy_spread"].as_f64().unwrap_or(f64::NAN);
            check(
                spread <= CONSTANCY_TOL,
                format!("trial {t}: spread {spread}"),
            )?;
            let search_min = row["search_min"].as_f64().unwrap_or(f64::NAN);
            check(
                search_min >= cert - DIST_TOL,
                format!("trial {t}: search {search_min} beat certificate {cert}"),
            )?;
        }
        let flags = rep["consistency_flags"].as_array().expect("flags");
        check(
            flags.iter().all(|f| f["agrees"] == Value::from(true)),
            "some consistency flag is false",
        )
    };
    conclude("solvable-witnesses", run());
}

#[test]
fn acceptance_levi_witness_distance() {
    let run = || -> Result<(), String> {
        let out = usub(&["levi-demo"]);
        let rep = report(&out)?;
        let table = rows(&rep);
        let witness = table[0]["min_distance"].as_f64().unwrap_or(f64::NAN);
        check(
            (witness - std::f64::consts::FRAC_1_SQRT_2).abs() <= WITNESS_TOL,
            format!("semisimple-factor distance {witness}"),
        )?;
        let full = table[1]["min_distance"].as_f64().unwrap_or(f64::NAN);
        check(full < DIST_TOL, format!("full-group distance {full}"))
    };
    conclude("levi-witness-distance", run());
}

#[test]
fn acceptance_deterministic_reports() {
    let run = || -> Result<(), String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cfg_path = dir.path().join("job.toml");
        std::fs::write(
            &cfg_path,
            r#"
                [group]
                kind = "su2"

                [representation]
                kind = "irrep"
                degree = 3

                [subspace]
                kind = "weight-complement"
                killed = [2]

                [search]
                restarts = 8
                samples = 5
            "#,
        )
        .map_err(|e| e.to_string())?;

        let cases: Vec<Vec<&str>> = vec![
            vec!["su2-classify", "--n", "3", "--samples", "10"],
            vec!["levi-demo", "--samples", "5"],
            vec!["run", "--config", cfg_path.to_str().unwrap()],
        ];
        for args in &cases {
            let first = usub(args);
            let second = usub(args);
            check(
                first.status.success() && second.status.success(),
                format!("{args:?} failed"),
            )?;
            check(
                first.stdout == second.stdout,
                format!("{args:?}: stdout differs between identical runs"),
            )?;
        }

        // File outputs must be byte-identical too.
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        for path in [&a, &b] {
            let out = usub(&[
                "su2-classify",
                "--n",
                "2",
                "--samples",
                "10",
                "--out",
                path.to_str().unwrap(),
            ]);
            check(out.status.success(), "file-output run failed")?;
        }
        check(
            std::fs::read(&a).map_err(|e| e.to_string())?
                == std::fs::read(&b).map_err(|e| e.to_string())?,
            "JSON files differ",
        )?;
        check(
            std::fs::read(a.with_extension("csv")).map_err(|e| e.to_string())?
                == std::fs::read(b.with_extension("csv")).map_err(|e| e.to_string())?,
            "CSV sidecars differ",
        )
    };
    conclude("deterministic-reports", run());
}
