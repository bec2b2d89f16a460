mod common;

use std::path::{Path, PathBuf};

use common::drinfeld_double;
use hopfkit::cli::run;
use hopfkit::coalgebra::coradical;
use hopfkit::exactmath::linalg::mat_vec;
use hopfkit::io::StructureFile;
use hopfkit::zoo::{self, Built, ZooSpec};
use hopfkit::Subspace;
use serde_json::Value;
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hopfkit(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hopfkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn emit(dir: &TempDir, family: &str) -> PathBuf {
    let path = dir.path().join(format!("{}.json", family.replace(|ch: char| !ch.is_ascii_alphanumeric(), "_")));
    let o = hopfkit(&["zoo", "emit", family, "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn filtration_of_sweedler() {
    let dir = TempDir::new().unwrap();
    let sw = emit(&dir, "taft(2)");
    let o = hopfkit(&["filtration", p(&sw)]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "C_0 dim 2, C_1 dim 4 = H\n");
}

#[test]
fn bounds_dim14_json_excludes_eight_shapes() {
    let o = hopfkit(&["bounds", "--dim", "14", "--json"]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let shapes = v.as_array().unwrap();
    assert_eq!(shapes.len(), 8);
    for s in shapes {
        assert_eq!(s["excluded"], true);
        assert_eq!(s["open"], false);
        assert_eq!(s["shape"]["dim"], 14);
        assert!(s["verdicts"].as_array().unwrap().iter().all(|r| r["rule"].is_string() && r["fires"].is_boolean()));
    }
}

#[test]
fn pq_sweep_lists_eight_dimensions() {
    let o = hopfkit(&["pq", "--sweep"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("semisimple dimensions: 15, 21, 35, 55, 65, 77, 91, 143\n"), "{}", o.stdout);
    let o = hopfkit(&["pq", "--p", "3", "--q", "5", "--json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "semisimple");
    assert_eq!(v[0]["steps"].as_array().unwrap().len(), 5);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(hopfkit(&["frobnicate"]).code, 1);
    assert_eq!(hopfkit(&["bounds"]).code, 1);
    assert_eq!(hopfkit(&["pq", "--p", "2", "--q", "7"]).code, 1);
    assert_eq!(hopfkit(&["--help"]).code, 0);
    assert_eq!(hopfkit(&["filtration", "/nonexistent/file.json"]).code, 1);
    // a root of unity outside the requested field
    assert_eq!(hopfkit(&["zoo", "emit", "taft(3)", "--conductor", "2"]).code, 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n\"field\": {\"conductor\": 1},\n\"dim\": 2,\n\"basis\": [\"a\"]\n}\n").unwrap();
    let o = hopfkit(&["check", p(&bad)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line"), "{}", o.stderr);

    // a bialgebra without antipode: the monoid {1, 0} under multiplication
    let mut f = StructureFile::from_hopf(&zoo::group_algebra(zoo::Group::Cyclic(2), 1).unwrap());
    f.mul = Some(vec![(0, 0, 0, "1".into()), (0, 1, 1, "1".into()), (1, 0, 1, "1".into()), (1, 1, 1, "1".into())]);
    f.antipode = None;
    let monoid = dir.path().join("monoid.json");
    std::fs::write(&monoid, f.to_text()).unwrap();
    let o = hopfkit(&["check", p(&monoid)]);
    assert_eq!(o.code, 2, "{}", o.stderr);
    assert!(o.stderr.contains("antipode"));

    // a broken coassociativity
    let mut f = StructureFile::from_coalgebra(&zoo::c3());
    f.comul.push((2, 2, 2, "1".into()));
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, f.to_text()).unwrap();
    let o = hopfkit(&["check", p(&broken)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("axioms fail"));
}

#[test]
fn zoo_emit_round_trips() {
    let dir = TempDir::new().unwrap();
    for family in [
        "group_algebra(cyclic(3))",
        "group_algebra(dihedral(3))",
        "dual_group_algebra(dihedral(3))",
        "taft(3)",
        "pointed8",
        "matrix_coalgebra(2)",
        "c2(-3)",
        "c3",
        "direct_sum(c3, c2(1/2))",
        "tensor_product(taft(2), group_algebra(cyclic(2)))",
        "dual(taft(2))",
    ] {
        let spec: ZooSpec = family.parse().unwrap();
        assert_eq!(spec.to_string().parse::<ZooSpec>().unwrap(), spec);
        let built = zoo::build(&spec, spec.required_conductor()).unwrap();
        let path = emit(&dir, family);
        let back = StructureFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap().build().unwrap();
        match (&built, &back) {
            (Built::Hopf(a), Built::Hopf(b)) => {
                assert_eq!(a.coalgebra, b.coalgebra, "{family}");
                assert_eq!(a.algebra, b.algebra, "{family}");
                assert_eq!(a.s().unwrap(), b.s().unwrap(), "{family}");
            }
            (Built::Coalgebra(a), Built::Coalgebra(b)) => assert_eq!(a, b, "{family}"),
            _ => panic!("{family}: kind changed"),
        }
        assert_eq!(hopfkit(&["check", p(&path)]).code, 0, "{family}");
    }
}

#[test]
fn json_output_is_stable_under_rerun() {
    let dir = TempDir::new().unwrap();
    let t3 = emit(&dir, "taft(3)");
    for args in [
        vec!["nichols", p(&t3), "--seed", "5", "--json"],
        vec!["coradical", p(&t3), "--json"],
        vec!["antipode", p(&t3), "--json"],
        vec!["bounds", "--dim", "16", "--json"],
    ] {
        let a = hopfkit(&args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, hopfkit(&args).stdout, "{args:?}");
    }
}

#[test]
fn file_subcommands() {
    let dir = TempDir::new().unwrap();
    let sw = emit(&dir, "taft(2)");
    let o = hopfkit(&["grouplikes", p(&sw), "--json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["grouplikes"].as_array().unwrap().len(), 2);

    let o = hopfkit(&["skewprim", p(&sw), "--g", "1", "--h", "g", "--json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["nontrivial_dim"], 1);

    let o = hopfkit(&["antipode", p(&sw), "--json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["divides"], true);

    let o = hopfkit(&["subalgebra", p(&sw), "--seed-basis", "g"]);
    assert!(o.stdout.starts_with("generated Hopf subalgebra: dim 2 of 4"), "{}", o.stdout);
    let o = hopfkit(&["subalgebra", p(&sw), "--seed-basis", "x"]);
    assert!(o.stdout.starts_with("generated Hopf subalgebra: dim 4 of 4"), "{}", o.stdout);

    let o = hopfkit(&["nichols", p(&sw), "--json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["p_dims"][0], 2);

    let ds = emit(&dir, "direct_sum(c3, c2(-1))");
    let o = hopfkit(&["classify2x2", p(&ds), "--span", "g.0", "--span", "u.0", "--span", "0;0;0;0;0", "--span", "h.0"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("span ≅ C3"));
    let o = hopfkit(&["classify2x2", p(&ds), "--span", "x.1", "--span", "y.1", "--span", "0;0;0;0;-1", "--span", "x.1"]);
    assert!(o.stdout.starts_with("span ≅ C2(-1)"), "{}", o.stdout);
    assert_eq!(hopfkit(&["classify2x2", p(&ds), "--span", "x.1"]).code, 1);
    assert_eq!(hopfkit(&["antipode", p(&ds)]).code, 1);
}

#[test]
fn stable_search_subcommand() {
    let dir = TempDir::new().unwrap();
    let h = drinfeld_double(&zoo::taft(2, 1).unwrap()).unwrap().dualize();
    let path = dir.path().join("swap.json");
    std::fs::write(&path, StructureFile::from_hopf(&h).to_text()).unwrap();
    let cor = coradical(&h.coalgebra).unwrap();
    let s = h.s().unwrap();
    let image = |i: usize| {
        let b = cor.components[i].subcoalgebra.basis();
        Subspace::new(h.dim(), b.iter().map(|v| mat_vec(&s, v)).collect())
    };
    let (c, d) = (0..cor.components.len())
        .filter(|&i| cor.components[i].d == 2)
        .find_map(|i| {
            let img = image(i);
            (img != cor.components[i].subcoalgebra)
                .then(|| cor.components.iter().position(|k| k.subcoalgebra == img).map(|j| (i, j)))
                .flatten()
        })
        .unwrap();
    let o = hopfkit(&["stable-search", p(&path), "--c", &c.to_string(), "--d", &d.to_string(), "--json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "grouplike_forced");
    let o = hopfkit(&["stable-search", p(&path), "--c", &c.to_string(), "--d", &c.to_string()]);
    assert_eq!(o.code, 1);
}
