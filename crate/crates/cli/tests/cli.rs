use std::path::PathBuf;
use std::sync::Arc;

use torsionlab::format::{
    parse_category, parse_filter, parse_filters, parse_ideals, parse_modules, parse_sections, serialize_category,
    serialize_filter, serialize_ideal, serialize_module,
};
use torsionlab::{replay_axiom_witness, run, Record, Verdict};
use torsionlab_core::catcore::{compile_quiver, Category};
use torsionlab_core::ideals::enumerate_right_ideals;
use torsionlab_core::torsion::enumerate_filters;
use torsionlab_core::Limits;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).display().to_string()
}

fn read(path: &str) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn category(name: &str) -> Arc<Category> {
    Arc::new(compile_quiver(&parse_category(&read(&fixture(name))).unwrap()).unwrap())
}

fn tl(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["torsionlab".to_string()];
    argv.extend(args.iter().map(|a| {
        if a.ends_with(".cat") || a.ends_with(".flt") || a.ends_with(".mod") {
            fixture(a)
        } else {
            a.to_string()
        }
    }));
    run(argv)
}

/// Compares with `tests/golden/<name>`, rewriting it when
/// `TORSIONLAB_BLESS` is set.
fn golden(name: &str, actual: &str) {
    let path = dir("golden").join(name);
    if std::env::var_os("TORSIONLAB_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "golden {name}");
}

#[test]
fn category_files_roundtrip_byte_for_byte() {
    for name in ["a2.cat", "a3.cat", "tube-r2-d2.cat", "mesh-2-3.cat"] {
        let text = read(&fixture(name));
        let p = parse_category(&text).unwrap();
        let out = serialize_category(&p);
        assert_eq!(out, text, "{name}");
        assert_eq!(parse_category(&out).unwrap(), p);
        golden(&format!("{name}.golden"), &out);
    }
}

#[test]
fn module_filter_and_ideal_files_roundtrip() {
    let c = category("a2.cat");
    let text = read(&fixture("a2.mod"));
    let mods = parse_modules(&text, &c).unwrap();
    let out: Vec<String> = mods.iter().map(|(n, m)| serialize_module(n, m)).collect();
    assert_eq!(out.join("\n"), text);
    for name in ["vanish1.flt", "not_linear.flt"] {
        let (fname, f) = parse_filters(&read(&fixture(name)), &c).unwrap().remove(0);
        let out = serialize_filter(&fname, &c, &f);
        assert_eq!(parse_filter(&out, &c).unwrap(), f);
        assert_eq!(serialize_filter(&fname, &c, &parse_filter(&out, &c).unwrap()), out);
        golden(&format!("{name}.golden"), &out);
    }
    for cname in ["a2.cat", "a3.cat", "tube-r2-d2.cat"] {
        let c = category(cname);
        for obj in 0..c.num_objects() {
            for (k, i) in enumerate_right_ideals(&c, obj, Limits::default())
                .unwrap()
                .iter()
                .enumerate()
            {
                let out = serialize_ideal(&format!("I{k}"), &c, i);
                let back = parse_ideals(&out, &c).unwrap().remove(0);
                assert_eq!(&back.1, i);
                assert_eq!(serialize_ideal(&back.0, &c, &back.1), out);
            }
        }
        for (k, f) in enumerate_filters(&c, Limits::default()).unwrap().iter().enumerate() {
            let out = serialize_filter(&format!("F{k}"), &c, f);
            assert_eq!(&parse_filter(&out, &c).unwrap(), f);
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let empty = "[category]\nname = X\nfield = GF(2)\nobjects =\nbound = 1\n";
    let e = parse_category(empty).unwrap_err();
    assert_eq!((e.line, e.column), (4, 10));
    assert!(e.message.contains("empty"));

    let unknown =
        "[category]\nname = X\nfield = GF(2)\nobjects = 1 2\nbound = 2\narrow a = 1 -> 2\nrelation = 1*a.zz\n";
    let e = parse_category(unknown).unwrap_err();
    assert_eq!(e.line, 7);
    assert!(e.message.contains("`zz`"), "{}", e.message);

    let e = parse_sections("name = X\n").unwrap_err();
    assert_eq!((e.line, e.column), (1, 1));
    let e = parse_sections("[category]\n  name X\n").unwrap_err();
    assert_eq!(e.line, 2);
    let e = parse_sections("[categroy]\n").unwrap_err();
    assert!(e.message.contains("categroy"));

    let c = category("a2.cat");
    let bad = "[module]\nname = M\ndims = 1 1\narrow a = [[1, 0]]\n";
    let e = parse_modules(bad, &c).unwrap_err();
    assert_eq!((e.line, e.column), (4, 11));
    let bad = "[filter]\nname = F\nbase 2 = <1*id(1)>\n";
    assert_eq!(parse_filters(bad, &c).unwrap_err().line, 3);

    let (code, _, err) = tl(&["cat", "compile", "--cat", "a2.flt"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(
        tl(&["filter", "check", "--cat", "a2.cat", "--filter", "vanish1.flt"]).0,
        0
    );
    assert_eq!(
        tl(&["filter", "check", "--cat", "a2.cat", "--filter", "not_linear.flt"]).0,
        1
    );
    assert_eq!(tl(&["frobnicate"]).0, 2);
    assert_eq!(tl(&["filter", "check", "--cat", "a2.cat"]).0, 2);
    assert_eq!(tl(&["--ceiling", "3", "universe", "enumerate", "--cat", "a2.cat"]).0, 3);
    let (code, out, _) = tl(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("torsion"));
}

#[test]
fn vanishing_filter_passes_every_axiom() {
    let (code, out, _) = tl(&["filter", "check", "--cat", "a2.cat", "--filter", "vanish1.flt"]);
    assert_eq!(code, 0);
    golden("filter-check-vanish1.txt", &out);
    let (code, out, _) = tl(&["filter", "vanishing", "--cat", "a2.cat", "--objects", "1"]);
    assert_eq!(code, 0);
    golden("filter-vanishing-1.txt", &out);
}

#[test]
fn every_linear_filter_roundtrips() {
    for cat in ["a2.cat", "a3.cat"] {
        let (code, out, err) = tl(&["filter", "roundtrip", "--cat", cat]);
        assert_eq!(code, 0, "{out}{err}");
    }
    let (code, out, _) = tl(&["filter", "roundtrip", "--cat", "a2.cat"]);
    assert_eq!(code, 0);
    golden("filter-roundtrip-a2.txt", &out);
}

fn records(out: &str) -> Vec<serde_json::Value> {
    out.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn records_are_json_lines_and_witnesses_replay() {
    let (code, out, _) = tl(&[
        "--format",
        "records",
        "filter",
        "check",
        "--cat",
        "a2.cat",
        "--filter",
        "not_linear.flt",
    ]);
    assert_eq!(code, 1);
    let recs = records(&out);
    assert_eq!(recs.len(), 4);
    for r in &recs {
        for key in ["check", "object", "verdict"] {
            assert!(r.get(key).is_some());
        }
    }
    let c = category("a2.cat");
    let f = parse_filter(&read(&fixture("not_linear.flt")), &c).unwrap();
    let failed: Vec<&serde_json::Value> = recs.iter().filter(|r| r["verdict"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    let w = failed[0]["witness"].as_str().unwrap();
    assert!(replay_axiom_witness(&c, &f, w).unwrap());
    // the same witness does not indict a linear filter
    let good = parse_filter(&read(&fixture("vanish1.flt")), &c).unwrap();
    assert!(!replay_axiom_witness(&c, &good, w).unwrap());
    golden("filter-check-not-linear.jsonl", &out);

    // every T3 and T4 counterexample on A3 replays
    let tmp = std::env::temp_dir().join(format!("torsionlab-a3-{}.flt", std::process::id()));
    let c3 = category("a3.cat");
    for (k, f) in enumerate_filters(&c3, Limits::default()).unwrap().iter().enumerate() {
        std::fs::write(&tmp, serialize_filter(&format!("F{k}"), &c3, f)).unwrap();
        let (_, out, _) = run([
            "torsionlab",
            "--format",
            "records",
            "filter",
            "check",
            "--cat",
            &fixture("a3.cat"),
            "--filter",
            tmp.to_str().unwrap(),
        ]);
        for r in records(&out).iter().filter(|r| r["verdict"] == "fail") {
            assert!(replay_axiom_witness(&c3, f, r["witness"].as_str().unwrap()).unwrap());
        }
    }
    let _ = std::fs::remove_file(&tmp);
}

#[test]
fn torsion_commands() {
    let (code, out, _) = tl(&[
        "torsion",
        "member",
        "--cat",
        "a2.cat",
        "--filter",
        "vanish1.flt",
        "--module",
        "s2.mod",
    ]);
    assert_eq!((code, out.as_str()), (0, "torsion S2: pass\n"));
    let (code, out, _) = tl(&[
        "torsion",
        "member",
        "--cat",
        "a2.cat",
        "--filter",
        "vanish1.flt",
        "--module",
        "a2.mod",
    ]);
    assert_eq!(code, 1);
    golden("torsion-member-a2.txt", &out);
    let (code, _, _) = tl(&["torsion", "closure", "--cat", "a2.cat", "--filter", "vanish1.flt"]);
    assert_eq!(code, 0);
    let (code, out, _) = tl(&[
        "torsion",
        "cogenerator",
        "--cat",
        "a2.cat",
        "--filter",
        "vanish1.flt",
        "--module",
        "e1.mod",
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = tl(&[
        "torsion",
        "sigma",
        "--cat",
        "a2.cat",
        "--generator",
        "s2.mod",
        "--module",
        "a2.mod",
    ]);
    assert_eq!(code, 1);
    golden("torsion-sigma-s2.txt", &out);
    for (cat, objs) in [("a2.cat", "1"), ("tube-r2-d2.cat", "t0_1,t1_1")] {
        let (code, out, _) = tl(&["torsion", "sigma", "--cat", cat, "--objects", objs, "--dim-bound", "1"]);
        assert_eq!(code, 0, "{out}");
    }
}

#[test]
fn dense_and_topology_commands() {
    let (code, out, _) = tl(&[
        "ideals",
        "dense",
        "--cat",
        "mesh-2-3.cat",
        "--ideal",
        "<1*u1_0>@m1_1",
        "--strict-dense",
    ]);
    assert_eq!(code, 0);
    golden("ideals-dense-mesh.txt", &out);
    let (_, out, _) = tl(&["filter", "dense-filter", "--cat", "tube-r2-d2.cat", "--strict-dense"]);
    let recs: Vec<&str> = out.lines().filter(|l| l.starts_with("T3 ")).collect();
    assert_eq!(recs, ["T3 dense: pass"]);
    let (code, _, _) = tl(&["topo", "verify", "--cat", "a2.cat", "--filter", "vanish1.flt"]);
    assert_eq!(code, 0);
    let (code, out, _) = tl(&["topo", "verify", "--cat", "a2.cat", "--filter", "not_linear.flt"]);
    assert_eq!(code, 1);
    assert!(out.contains("composition (1,1,2): FAIL"));
    golden("topo-verify-not-linear.txt", &out);
}

#[test]
fn generators_and_universe() {
    let (code, out, _) = tl(&["gen", "tube", "--rank", "2", "--depth", "2"]);
    assert_eq!(code, 0);
    let body: String = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(body, read(&fixture("tube-r2-d2.cat")));
    let (code, out, _) = tl(&["universe", "enumerate", "--cat", "a2.cat", "--dim-bound", "1", "--list"]);
    assert_eq!(code, 0);
    golden("universe-a2-1.txt", &out);
    assert_eq!(
        tl(&["gen", "mesh", "--n", "2", "--window", "3", "--field", "GF(4)"]).0,
        2
    );
}

#[test]
fn structured_records_have_the_documented_fields() {
    let r = Record {
        check: "T1".into(),
        object: "F".into(),
        verdict: Verdict::Pass,
        witness: None,
    };
    assert_eq!(
        serde_json::to_string(&r).unwrap(),
        r#"{"check":"T1","object":"F","verdict":"pass"}"#
    );
}
