//! Command-line front end: construct catalog objects, run the
//! verification sweeps, and emit JSON/DOT artifacts.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
//! input error, 3 a resource bound was exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use f1geom::bnpair::{
    apartment_embedding, bruhat, builtin_gl, chamber_transitivity, coset_geometry,
    kernel_saturation, report, verify_bn, BnVerdict, ConcreteGroup, TitsSystem,
};
use f1geom::braids::{gamma, is_pure, rho_image, rho_word, shephard_group, BraidWord, Graph};
use f1geom::coxeter::{
    catalog_matrix, classify_spherical, coxeter_complex, coxeter_group, parse_type,
    CoxeterDiagram, CoxeterMatrix,
};
use f1geom::error::Error;
use f1geom::f1linalg::{gl_enumerate, mult_as_monomial, power_residue, FqField};
use f1geom::group::perm_cycles;
use f1geom::incidence::{
    diagram_check, dualize, gp_recognize, ordinary_ngon, pg_f1, pg_fq, quadric_f1,
    rank2_f1_classify, weyl_image, Diagram, Geometry, GpOutcome, WeylInput,
};
use f1geom::qnum::{gaussian_binomial, pgl_order_poly};

#[derive(Parser)]
#[command(name = "f1geom", version, about = "Exact combinatorial algebra at desk scale")]
struct Cli {
    /// prepend a metadata envelope (excluded from determinism guarantees)
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian binomial [n choose k]_q as a polynomial, or evaluated
    Qbinom {
        n: usize,
        k: usize,
        /// evaluate at this integer instead of printing coefficients
        #[arg(long)]
        at: Option<i64>,
    },
    /// The counting polynomial N(q) of PGL_{n+1}, with the N(1) = (n+1)! check
    Npoly { n: usize },
    /// Sweep the power-residue determinant identity over all of F_q^×
    GaussLemma {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
    },
    /// Order of GL_d(F1^n), optionally dumping every element
    GlF1 {
        d: usize,
        n: u32,
        #[arg(long)]
        elements: bool,
    },
    /// Coxeter diagram operations (terse name like "A3", or a DOT file, or -)
    Coxeter {
        #[command(subcommand)]
        op: CoxeterOp,
    },
    /// Incidence geometry operations on the JSON schema (file or -)
    Geometry {
        #[command(subcommand)]
        op: GeometryOp,
    },
    /// The subset geometry PG(n, F1)
    PgF1 { n: i64 },
    /// The projective geometry PG(n, q)
    PgFq { n: usize, q: u32 },
    /// The quadric over F1 with n+1 point pairs
    QuadricF1 {
        n: usize,
        #[arg(long)]
        even: bool,
    },
    /// The ordinary m-gon
    Ngon { m: usize },
    /// Tits system operations
    Bn {
        #[command(subcommand)]
        op: BnOp,
    },
    /// Weyl image of a tagged input (JSON file or -)
    Weyl { input: String },
    /// Braid operations
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
}

#[derive(Subcommand)]
enum CoxeterOp {
    /// Spherical classification of a diagram
    Classify { diagram: String },
    /// Enumerate the Coxeter group and print its order
    Order {
        diagram: String,
        #[arg(long, default_value_t = 200_000)]
        max_cosets: usize,
    },
    /// The Coxeter complex as geometry JSON
    Complex {
        diagram: String,
        #[arg(long, default_value_t = 200_000)]
        max_cosets: usize,
    },
}

#[derive(Subcommand)]
enum GeometryOp {
    /// Structural validation report
    Validate { input: String },
    /// Generalized-polygon recognition
    Gp { input: String },
    /// Rank-2 F1 catalog classification
    Classify { input: String },
    /// Check every corank-2 residue against the A-path diagram
    DiagramCheck { input: String },
    /// Swap the two types of a rank-2 geometry
    Dualize { input: String },
}

#[derive(Args)]
struct BnInstance {
    /// builtin instance "gl:N:P"
    #[arg(long)]
    instance: Option<String>,
    /// three JSON files: generators of G, elements of B, elements of N
    #[arg(long, num_args = 3)]
    files: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum BnOp {
    /// Check the four BN axioms
    Verify {
        #[command(flatten)]
        source: BnInstance,
    },
    /// Bruhat cell sizes
    Bruhat {
        #[command(flatten)]
        source: BnInstance,
    },
    /// The coset building as geometry JSON
    Build {
        #[command(flatten)]
        source: BnInstance,
    },
    /// Full JSON report
    Report {
        #[command(flatten)]
        source: BnInstance,
    },
}

#[derive(Subcommand)]
enum BraidOp {
    /// Strand permutation of a word, in cycle notation
    Gamma {
        #[arg(long)]
        strands: usize,
        word: String,
    },
    /// Monomial matrix image of a word, as JSON
    Rho {
        #[arg(long)]
        strands: usize,
        word: String,
    },
    /// Closure of the generator images, with the S_n certificate
    Image { strands: usize },
    /// Order of the Shephard quotient A(path_k, d)
    Shephard {
        /// number of vertices of the path graph
        #[arg(long)]
        path: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 200_000)]
        max_cosets: usize,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::parse(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::parse(format!("reading {path}: {e}")))
    }
}

fn read_geometry(path: &str) -> Result<Geometry, Error> {
    let text = read_input(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::parse(format!("bad JSON: {e}")))?;
    Geometry::from_json(&value)
}

fn read_diagram(arg: &str) -> Result<CoxeterMatrix, Error> {
    if let Ok(class) = parse_type(arg) {
        return catalog_matrix(class);
    }
    let text = read_input(arg)?;
    Ok(CoxeterDiagram::from_dot(&text)?.to_matrix())
}

fn load_system(source: &BnInstance) -> Result<TitsSystem, Error> {
    let (g, b, n) = match (&source.instance, &source.files) {
        (Some(spec), None) => {
            let parts: Vec<&str> = spec.split(':').collect();
            let usage = || Error::parse(format!("instance {spec:?}; expected gl:N:P"));
            if parts.len() != 3 || parts[0] != "gl" {
                return Err(usage());
            }
            let n: usize = parts[1].parse().map_err(|_| usage())?;
            let p: u8 = parts[2].parse().map_err(|_| usage())?;
            builtin_gl(n, p, None)?
        }
        (None, Some(files)) => {
            let [gf, bf, nf] = files.as_slice() else {
                return Err(Error::parse("--files needs exactly three paths"));
            };
            let read_mats = |path: &str| -> Result<(usize, u8, Vec<Vec<u8>>), Error> {
                let v: serde_json::Value = serde_json::from_str(&read_input(path)?)
                    .map_err(|e| Error::parse(format!("{path}: {e}")))?;
                let n = v["n"].as_u64().ok_or_else(|| Error::parse("missing n"))? as usize;
                let p = v["p"].as_u64().ok_or_else(|| Error::parse("missing p"))? as u8;
                let mats = v["matrices"]
                    .as_array()
                    .ok_or_else(|| Error::parse("missing matrices"))?
                    .iter()
                    .map(|m| {
                        m.as_array()
                            .ok_or_else(|| Error::parse("matrix must be an array"))?
                            .iter()
                            .map(|x| {
                                x.as_u64()
                                    .map(|v| v as u8)
                                    .ok_or_else(|| Error::parse("matrix entries are integers"))
                            })
                            .collect::<Result<Vec<u8>, Error>>()
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                Ok((n, p, mats))
            };
            let (n, p, ggens) = read_mats(gf)?;
            let g = ConcreteGroup::closure(n, p, &ggens, None)?;
            let ids = |mats: Vec<Vec<u8>>, label: &str| -> Result<Vec<usize>, Error> {
                mats.iter()
                    .map(|m| {
                        g.id_of(m).ok_or_else(|| {
                            Error::domain(format!("{label} contains an element outside G"))
                        })
                    })
                    .collect()
            };
            let (nb, pb, bmats) = read_mats(bf)?;
            let (nn, pn, nmats) = read_mats(nf)?;
            if (nb, pb) != (n, p) || (nn, pn) != (n, p) {
                return Err(Error::domain("B and N must match G's dimensions"));
            }
            let b = ids(bmats, "B")?;
            let nset = ids(nmats, "N")?;
            (g, b, nset)
        }
        _ => return Err(Error::parse("give exactly one of --instance or --files")),
    };
    match verify_bn(&g, &b, &n)? {
        BnVerdict::Valid(ts) => Ok(ts),
        BnVerdict::Invalid { axiom, detail } => Err(Error::verification(format!(
            "axiom ({axiom}) failed: {detail}"
        ))),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Error> {
    if cli.meta {
        println!("# tool: f1geom {}", env!("CARGO_PKG_VERSION"));
        println!(
            "# argv: {}",
            std::env::args().skip(1).collect::<Vec<_>>().join(" ")
        );
    }
    match cli.command {
        Command::Qbinom { n, k, at } => {
            let poly = gaussian_binomial(n, k)?;
            match at {
                Some(q0) => println!("{}", poly.eval(&BigInt::from(q0))),
                None => print_json(&poly.to_json()),
            }
        }
        Command::Npoly { n } => {
            let poly = pgl_order_poly(n);
            let at_one = poly.eval_i64(1);
            let want: BigInt = (1..=n as u64 + 1).product::<u64>().into();
            print_json(&poly.to_json());
            if at_one != want {
                return Err(Error::verification(format!(
                    "N(1) = {at_one} differs from (n+1)! = {want}"
                )));
            }
            println!("N(1) = {at_one} = (n+1)!");
        }
        Command::GaussLemma { q, n } => {
            let (p, e) = factor_prime_power(q)?;
            let field = FqField::new(p, e, None)?;
            if n < 2 || (q - 1) % n != 0 {
                return Err(Error::domain(format!("n = {n} must divide q-1 = {}", q - 1)));
            }
            for a in 1..q {
                let det = mult_as_monomial(&field, a, n)?.det();
                let symbol = power_residue(&field, a, n)?;
                if det != symbol {
                    return Err(Error::verification(format!(
                        "determinant differs from the power residue symbol at a = {a}"
                    )));
                }
            }
            println!("gauss-lemma q={q} n={n}: all {} units agree", q - 1);
        }
        Command::GlF1 { d, n, elements } => {
            let (mats, group) = gl_enumerate(d, n, None)?;
            println!("|GL_{d}(F1^{n})| = {}", group.order());
            if elements {
                for m in &mats {
                    println!("{}", serde_json::to_string(&m.to_json()).expect("serializable"));
                }
            }
        }
        Command::Coxeter { op } => match op {
            CoxeterOp::Classify { diagram } => {
                let m = read_diagram(&diagram)?;
                println!("{}", classify_spherical(&CoxeterDiagram::from_matrix(&m))?);
            }
            CoxeterOp::Order { diagram, max_cosets } => {
                let m = read_diagram(&diagram)?;
                let w = coxeter_group(&m, Some(max_cosets))?
                    .ok_or_else(|| Error::resource(format!("no completion within {max_cosets} cosets")))?;
                println!("{}", w.order());
            }
            CoxeterOp::Complex { diagram, max_cosets } => {
                let m = read_diagram(&diagram)?;
                let w = coxeter_group(&m, Some(max_cosets))?
                    .ok_or_else(|| Error::resource(format!("no completion within {max_cosets} cosets")))?;
                print_json(&coxeter_complex(&w, &m)?.to_json());
            }
        },
        Command::Geometry { op } => match op {
            GeometryOp::Validate { input } => {
                let g = read_geometry(&input)?;
                let rep = g.validate();
                println!("objects: {}", g.num_objects());
                println!("rank: {}", g.rank());
                println!("connected: {}", rep.connected);
                for v in &rep.violations {
                    println!("violation: {v}");
                }
                if !rep.is_valid() {
                    return Err(Error::verification(format!(
                        "{} violations",
                        rep.violations.len()
                    )));
                }
                println!("valid");
            }
            GeometryOp::Gp { input } => {
                let g = read_geometry(&input)?;
                match gp_recognize(&g)? {
                    GpOutcome::Gp(rep) => {
                        let kind = if rep.thin {
                            "thin"
                        } else if rep.thick {
                            "thick"
                        } else {
                            "mixed"
                        };
                        println!("n={} s={} t={} {kind}", rep.gonality, rep.s, rep.t);
                    }
                    GpOutcome::NotGp(why) => {
                        return Err(Error::verification(format!("not a generalized polygon: {why}")))
                    }
                }
            }
            GeometryOp::Classify { input } => {
                let g = read_geometry(&input)?;
                println!("{}", rank2_f1_classify(&g)?);
            }
            GeometryOp::DiagramCheck { input } => {
                let g = read_geometry(&input)?;
                let rep = diagram_check(&g, &Diagram::a_path(g.rank()))?;
                for (flag, (i, j), ok, detail) in &rep.checks {
                    let verdict = if *ok { "ok" } else { "FAIL" };
                    println!("flag {flag:?} residue ({i},{j}): {verdict} — {detail}");
                }
                if !rep.pass() {
                    return Err(Error::verification("a corank-2 residue fails its label"));
                }
            }
            GeometryOp::Dualize { input } => {
                let g = read_geometry(&input)?;
                print_json(&dualize(&g)?.to_json());
            }
        },
        Command::PgF1 { n } => print_json(&pg_f1(n, None)?.to_json()),
        Command::PgFq { n, q } => print_json(&pg_fq(n, q, None)?.geometry.to_json()),
        Command::QuadricF1 { n, even } => {
            print_json(&quadric_f1(n, even, None)?.geometry.to_json())
        }
        Command::Ngon { m } => print_json(&ordinary_ngon(m)?.to_json()),
        Command::Bn { op } => match op {
            BnOp::Verify { source } => {
                let ts = load_system(&source)?;
                println!(
                    "axioms hold: |G|={} |B|={} |N|={} |H|={} |W|={} |S|={}",
                    ts.g.order(),
                    ts.b.len(),
                    ts.n.len(),
                    ts.h.len(),
                    ts.w.order(),
                    ts.s.len()
                );
            }
            BnOp::Bruhat { source } => {
                let ts = load_system(&source)?;
                let dec = bruhat(&ts)?;
                let mut sizes: Vec<usize> = dec.cells.iter().map(|c| c.len()).collect();
                sizes.sort_unstable();
                let total: usize = sizes.iter().sum();
                println!("cells: {sizes:?}");
                println!("total: {total}");
            }
            BnOp::Build { source } => {
                let ts = load_system(&source)?;
                print_json(&coset_geometry(&ts)?.geometry.to_json());
            }
            BnOp::Report { source } => {
                let ts = load_system(&source)?;
                let dec = bruhat(&ts)?;
                let building = coset_geometry(&ts)?;
                let kernel = kernel_saturation(&ts);
                let mut rep = report(&ts, &dec, &kernel);
                rep["chamber_transitive"] =
                    serde_json::Value::Bool(chamber_transitivity(&ts, &building)?);
                rep["apartment_objects"] =
                    serde_json::Value::from(apartment_embedding(&ts, &building)?.len());
                print_json(&rep);
            }
        },
        Command::Weyl { input } => {
            let text = read_input(&input)?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::parse(format!("bad JSON: {e}")))?;
            let class = v["class"]
                .as_str()
                .ok_or_else(|| Error::parse("tagged input needs a \"class\" field"))?;
            let geometry = Geometry::from_json(&v["geometry"])?;
            let tagged = match class {
                "projective_space" => WeylInput::ProjectiveSpace {
                    geometry,
                    dim: v["dim"]
                        .as_u64()
                        .ok_or_else(|| Error::parse("projective_space needs dim"))?
                        as usize,
                    q: v["q"]
                        .as_u64()
                        .ok_or_else(|| Error::parse("projective_space needs q"))?
                        as u32,
                },
                "generalized_polygon" => WeylInput::GeneralizedPolygon { geometry },
                "building" => WeylInput::Building {
                    geometry,
                    weyl_complex: Geometry::from_json(&v["weyl_complex"])?,
                },
                "thin" => WeylInput::ThinCatalog { geometry },
                other => {
                    return Err(Error::parse(format!("unknown input class {other:?}")))
                }
            };
            print_json(&weyl_image(&tagged)?.to_json());
        }
        Command::Braid { op } => match op {
            BraidOp::Gamma { strands, word } => {
                let w = BraidWord::parse(strands, &word)?;
                println!("{}", perm_cycles(&gamma(&w)));
                println!("pure: {}", is_pure(&w));
            }
            BraidOp::Rho { strands, word } => {
                let w = BraidWord::parse(strands, &word)?;
                print_json(&rho_word(&w)?.to_json());
            }
            BraidOp::Image { strands } => {
                let g = rho_image(strands, None)?;
                println!("order: {}", g.order());
                println!("abelian: {}", g.is_abelian());
            }
            BraidOp::Shephard { path, d, max_cosets } => {
                let g = shephard_group(&Graph::path(path), d, Some(max_cosets))?
                    .ok_or_else(|| Error::resource(format!("no completion within {max_cosets} cosets")))?;
                println!("{}", g.order());
            }
        },
    }
    Ok(())
}

fn factor_prime_power(q: u32) -> Result<(u32, u32), Error> {
    for p in 2..=q {
        if q % p == 0 {
            let mut e = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::domain(format!("{q} is not a prime power")));
            }
            return Ok((p, e));
        }
    }
    Err(Error::domain(format!("{q} is not a prime power")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::Verification(_) => ExitCode::from(1),
                Error::Domain(_) | Error::Parse(_) => ExitCode::from(2),
                Error::Resource(_) => ExitCode::from(3),
            }
        }
    }
}
