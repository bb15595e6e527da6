use std::process::{Command, Output};

use affine_automata::automaton::Automaton;
use affine_automata::{AffineWeylGroup, Family, RootSystem};

fn affaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn automaton_json_round_trips() {
    let out = affaut(&[
        "automaton",
        "--type",
        "A",
        "--rank",
        "2",
        "--N",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let aut = Automaton::from_json(&stdout(&out)).unwrap();
    assert_eq!(aut.num_states(), 16);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("16 states"));
}

#[test]
fn dihedral_automaton_has_three_states() {
    let out = affaut(&["automaton", "--type", "A", "--rank", "1", "--N", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("automaton for A1 N=0: 3 states"));
    // per-length counts 1, 2, 2, ...
    assert!(text.contains("\n0\t1\n1\t2\n2\t2\n"));
}

#[test]
fn dot_matches_golden_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1.dot");
    let out = affaut(&[
        "automaton",
        "--type",
        "A",
        "--rank",
        "1",
        "--N",
        "0",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3 states"));
    let got = std::fs::read_to_string(&path).unwrap();
    assert_eq!(got, include_str!("fixtures/a1_n0.dot"));
}

#[test]
fn accept_and_reject() {
    let base = ["accept", "--type", "A", "--rank", "2"];
    let run = |word: &[&str]| {
        let args: Vec<&str> = base.iter().chain(word).copied().collect();
        affaut(&args)
    };
    let empty = run(&[]);
    assert_eq!((code(&empty), stdout(&empty).trim()), (0, "accept"));
    let square = run(&["0 0"]);
    assert_eq!((code(&square), stdout(&square).trim()), (1, "reject"));
    let split = run(&["0", "1", "2"]);
    assert_eq!(code(&split), 0);
}

#[test]
fn accept_agrees_with_hyperplane_criterion() {
    let g = AffineWeylGroup::new(RootSystem::new(Family::G, 2).unwrap());
    // a fixed spread of words of length 6
    for code_word in (0..729).step_by(37) {
        let word: Vec<usize> = (0..6).map(|i| code_word / 3usize.pow(i) % 3).collect();
        let text: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        let out = affaut(&[
            "accept",
            "--type",
            "G",
            "--rank",
            "2",
            "--N",
            "1",
            &text.join(" "),
        ]);
        let expected = if g.is_reduced_by_hyperplanes(&word).unwrap() {
            0
        } else {
            1
        };
        assert_eq!(code(&out), expected, "{word:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["automaton", "--type", "E", "--rank", "2"],
        &["automaton", "--type", "Q", "--rank", "2"],
        &["accept", "--type", "A", "--rank", "2", "0 5"],
        &["svg", "--type", "A", "--rank", "3"],
        &[
            "cells",
            "--type",
            "A",
            "--rank",
            "2",
            "--max-len",
            "8",
            "--stability-len",
            "8",
        ],
        &["automaton", "--type", "A", "--rank", "2", "--format", "svg"],
    ];
    for args in cases {
        let out = affaut(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn n_and_nu_preset_conflict() {
    let out = affaut(&[
        "automaton",
        "--type",
        "C",
        "--rank",
        "2",
        "--N",
        "1",
        "--nu-preset",
        "short0long1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn nu_preset_uniform_equals_n() {
    let a = affaut(&[
        "automaton",
        "--type",
        "C",
        "--rank",
        "2",
        "--nu-preset",
        "uniform:1",
        "--format",
        "json",
    ]);
    let b = affaut(&[
        "automaton",
        "--type",
        "C",
        "--rank",
        "2",
        "--N",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn g2_cells_need_n_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let args = [
        "cells",
        "--type",
        "G",
        "--rank",
        "2",
        "--max-len",
        "10",
        "--stability-len",
        "12",
    ];

    // some fragments have not stabilized at these radii
    let strict = affaut(&[&args[..], &["--N", "1"]].concat());
    assert_eq!(code(&strict), 1);

    let out = affaut(
        &[
            &args[..],
            &[
                "--N",
                "1",
                "--allow-unstable",
                "--format",
                "json",
                "--out",
                path.to_str().unwrap(),
            ],
        ]
        .concat(),
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["type"], "G");
    assert_eq!(report["N_or_nu"], "N=1");
    let cells = report["cells"].as_array().unwrap();
    assert!(cells
        .iter()
        .filter(|c| c["stable"] == true)
        .all(|c| c["exact"] == true));

    let coarse = affaut(&[&args[..], &["--N", "0", "--allow-unstable"]].concat());
    assert_eq!(code(&coarse), 1);
}

#[test]
fn a2_and_c2_cells_are_exact() {
    let a2 = affaut(&["cells", "--type", "A", "--rank", "2", "--N", "0"]);
    assert_eq!(code(&a2), 0);
    assert!(stdout(&a2).contains("10 of 10 stable cells are unions of regions"));
    let c2 = affaut(&[
        "cells",
        "--type",
        "C",
        "--rank",
        "2",
        "--nu-preset",
        "short0long1",
    ]);
    assert_eq!(code(&c2), 0);
}

#[test]
fn cells_output_is_deterministic() {
    let args = [
        "cells",
        "--type",
        "B",
        "--rank",
        "2",
        "--N",
        "1",
        "--max-len",
        "8",
        "--format",
        "json",
    ];
    assert_eq!(affaut(&args).stdout, affaut(&args).stdout);
}

fn svg_lines(args: &[&str]) -> usize {
    let out = affaut(args);
    assert_eq!(code(&out), 0);
    stdout(&out).matches("<line ").count()
}

#[test]
fn svg_draws_one_line_per_hyperplane() {
    assert_eq!(
        svg_lines(&[
            "svg",
            "--type",
            "A",
            "--rank",
            "2",
            "--N",
            "0",
            "--max-len",
            "6"
        ]),
        6
    );
    assert_eq!(
        svg_lines(&[
            "svg",
            "--type",
            "G",
            "--rank",
            "2",
            "--N",
            "1",
            "--max-len",
            "6"
        ]),
        24
    );
    assert_eq!(
        svg_lines(&[
            "svg",
            "--type",
            "C",
            "--rank",
            "2",
            "--nu-preset",
            "short0long1",
            "--max-len",
            "4"
        ]),
        2 * 2 + 2 * 4
    );
}

#[test]
fn svg_matches_golden_fixture_and_is_stable() {
    let args = [
        "svg",
        "--type",
        "A",
        "--rank",
        "2",
        "--N",
        "0",
        "--max-len",
        "2",
    ];
    let first = stdout(&affaut(&args));
    assert_eq!(first, include_str!("fixtures/a2_n0_len2.svg"));
    assert_eq!(first, stdout(&affaut(&args)));
}

fn polygon_areas(svg: &str) -> Vec<f64> {
    svg.lines()
        .filter_map(|l| l.split("points=\"").nth(1))
        .map(|rest| {
            let pts: Vec<(f64, f64)> = rest
                .split('"')
                .next()
                .unwrap()
                .split(' ')
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect();
            let n = pts.len();
            (0..n)
                .map(|i| pts[i].0 * pts[(i + 1) % n].1 - pts[(i + 1) % n].0 * pts[i].1)
                .sum::<f64>()
                .abs()
                / 2.0
        })
        .collect()
}

#[test]
fn svg_alcoves_are_congruent() {
    for ty in ["A", "B", "G"] {
        let out = affaut(&["svg", "--type", ty, "--rank", "2", "--max-len", "5"]);
        let areas = polygon_areas(&stdout(&out));
        assert!(areas.len() > 10);
        let a0 = areas[0];
        assert!(
            areas.iter().all(|a| (a - a0).abs() < 1e-2 * a0),
            "{ty}: {areas:?}"
        );
    }
}

#[test]
fn svg_cell_colouring() {
    let out = affaut(&[
        "svg",
        "--type",
        "A",
        "--rank",
        "2",
        "--max-len",
        "6",
        "--color-cells",
    ]);
    assert_eq!(code(&out), 0);
    let svg = stdout(&out);
    let fills: std::collections::BTreeSet<&str> = svg
        .lines()
        .filter_map(|l| l.split("fill=\"").nth(1))
        .map(|rest| rest.split('"').next().unwrap())
        .filter(|f| !["none", "#000000", "white"].contains(f))
        .collect();
    // nine non-identity left cells
    assert_eq!(fills.len(), 9);
}

#[test]
fn kl_and_wgraph_exports() {
    let kl = affaut(&[
        "kl",
        "--type",
        "A",
        "--rank",
        "1",
        "--max-len",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&kl), 0);
    let entries: serde_json::Value = serde_json::from_str(&stdout(&kl)).unwrap();
    assert!(entries
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["coeffs"] == serde_json::json!([1])));

    let wg = affaut(&[
        "wgraph",
        "--type",
        "A",
        "--rank",
        "2",
        "--max-len",
        "4",
        "--format",
        "dot",
        "--side",
        "right",
    ]);
    assert_eq!(code(&wg), 0);
    assert!(stdout(&wg).starts_with("digraph wgraph {"));
}

#[test]
fn regions_lists_every_region() {
    let out = affaut(&["regions", "--type", "C", "--rank", "2", "--N", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("81 regions"));
    assert_eq!(text.lines().count(), 82);
}
