//! Command-line front end: argument parsing, input loading and report rendering.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bilattice::algebra::{
    congruence_lattice, enumerate_homs, enumerate_subuniverses, find_isomorphism, Elem,
};
use bilattice::applications::{
    admissibility_check, free_embedding, structural_tests, unification_type, UnificationStatus,
};
use bilattice::birkhoff::{priestley_dual, OrderedSpace, PriestleySpace};
use bilattice::corpus::{corpus, random_lattice, DEFAULT_SEED};
use bilattice::document::{fingerprint_text, AlgebraDocument};
use bilattice::natural_duality::{
    coproduct_algebras, evaluation, free_algebra_with_guard, natural_dual, standard_alter_ego,
    verify_full_duality_with_guard, StructuredSpace, DEFAULT_GUARD,
};
use bilattice::piggyback::{dismount, knowledge_dual, piggyback_relations};
use bilattice::product_rep::{bowtie_in, verify_product_representation};
use bilattice::varieties::{
    canonical_by_name, convert_to, t_lattice, validate, CanonicalName, VarietyTag,
};
use bilattice::{Error, FinAlgebra};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_THEOREM: i32 = 4;
pub const EXIT_GUARD: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "bilattice",
    version,
    about = "Finite distributive bilattices and their dualities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Variety to read inputs in: DB, DB-, DPB, DPB-, D or D-.
    #[arg(long, global = true)]
    pub variety: Option<VarietyTag>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Resource guard for free algebras, coproducts and evaluations.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    pub max_size: u64,
    #[arg(long, global = true)]
    pub no_validate: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Canonical algebra used as an input before any files (repeatable).
    #[arg(long, global = true)]
    pub canonical: Vec<String>,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Algebra documents (JSON).
    pub files: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of the variety.
    Validate(Inputs),
    /// Print a canonical algebra as a document.
    Canonical {
        name: Option<String>,
        /// Also write the document to this file.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Homomorphisms from the first input to the second.
    Homs(Inputs),
    Subalgebras(Inputs),
    Congruences(Inputs),
    /// The natural dual.
    Dual(Inputs),
    /// The evaluation algebra of the natural dual.
    Edual(Inputs),
    /// Both round trips of the natural duality.
    Roundtrip(Inputs),
    /// Piggyback relations of a generator.
    Piggyback(Inputs),
    Dismount(Inputs),
    KnowledgeDual(Inputs),
    /// Priestley dual of a lattice, or of the truth lattice of a bilattice.
    Priestley(Inputs),
    /// Representation as a product bilattice.
    Prodrep(Inputs),
    /// The product bilattice of a lattice.
    Bowtie {
        #[command(flatten)]
        inputs: Inputs,
        /// Use a seeded random lattice instead of an input.
        #[arg(long)]
        random: bool,
        /// Also write the document to this file.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// The free algebra on n generators.
    Free {
        n: usize,
    },
    Coproduct(Inputs),
    UnifyType(Inputs),
    /// Basis clauses and the shape of the dual.
    Admissible(Inputs),
    EmbedFree(Inputs),
    Structural(Inputs),
    Iso(Inputs),
    /// The built-in test corpus.
    Corpus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidAlgebra(_) | Error::InvalidStructure(_) => EXIT_INVALID,
        Error::TheoremViolation(_) | Error::NoSeparatingHom => EXIT_THEOREM,
        Error::ResourceGuard { .. } => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

struct Input {
    label: String,
    variety: VarietyTag,
    algebra: FinAlgebra,
    fingerprint: String,
}

struct Report {
    summary: Vec<String>,
    data: Value,
    code: i32,
}

impl Report {
    fn ok(summary: Vec<String>, data: Value) -> Report {
        Report {
            summary,
            data,
            code: 0,
        }
    }
}

type Outcome = std::result::Result<Report, Error>;

fn load(
    cli: &Cli,
    files: &[String],
    validate_inputs: bool,
) -> std::result::Result<Vec<Input>, Error> {
    let mut raw: Vec<(String, VarietyTag, FinAlgebra)> = vec![];
    for name in &cli.canonical {
        let c: CanonicalName = name.parse()?;
        raw.push((
            format!("canonical {name}"),
            c.variety(),
            canonical_by_name(name)?,
        ));
    }
    for f in files {
        let text = fs::read_to_string(f).map_err(|e| Error::Parse(format!("{f}: {e}")))?;
        let doc = AlgebraDocument::parse(&text)?;
        raw.push((f.clone(), doc.variety, doc.to_algebra()?));
    }
    raw.into_iter()
        .map(|(label, v0, a)| {
            let v = cli.variety.unwrap_or(v0);
            let algebra = convert_to(&a, v)?;
            if validate_inputs && !cli.no_validate {
                let r = validate(&algebra, v);
                if let Some(bad) = r.violations.first() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{label} is not in {v}: {} fails at {}",
                        bad.axiom,
                        names(&algebra, &bad.witness)
                    )));
                }
            }
            let fingerprint = AlgebraDocument::from_algebra(&algebra, v).fingerprint();
            Ok(Input {
                label,
                variety: v,
                algebra,
                fingerprint,
            })
        })
        .collect()
}

fn exactly(inputs: Vec<Input>, n: usize) -> std::result::Result<Vec<Input>, Error> {
    if inputs.len() != n {
        return Err(Error::Precondition(format!(
            "expected {n} input algebra(s), got {}",
            inputs.len()
        )));
    }
    Ok(inputs)
}

fn names(a: &FinAlgebra, es: &[Elem]) -> String {
    let ns: Vec<&str> = es.iter().map(|&e| a.name(e)).collect();
    format!("[{}]", ns.join(","))
}

fn set(a: &FinAlgebra, es: &[Elem]) -> String {
    let ns: Vec<&str> = es.iter().map(|&e| a.name(e)).collect();
    format!("{{{}}}", ns.join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn order_pairs(labels: &[String], leq: impl Fn(usize, usize) -> bool) -> Vec<String> {
    let n = labels.len();
    let mut out = vec![];
    for p in 0..n {
        for q in 0..n {
            if p != q && leq(p, q) {
                out.push(format!("{} <= {}", labels[p], labels[q]));
            }
        }
    }
    out
}

fn covers(p: &PriestleySpace) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = vec![];
    for x in 0..n {
        for y in 0..n {
            if x != y
                && p.leq(x, y)
                && !(0..n).any(|z| z != x && z != y && p.leq(x, z) && p.leq(z, y))
            {
                out.push((x, y));
            }
        }
    }
    out
}

fn poset_summary(p: &PriestleySpace, out: &mut Vec<String>) -> Value {
    out.push(format!("points: {}", p.points().join(" ")));
    let cs = covers(p);
    for &(x, y) in &cs {
        out.push(format!("cover: {} < {}", p.points()[x], p.points()[y]));
    }
    json!({
        "points": p.points(),
        "covers": cs.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
    })
}

fn space_summary(s: &StructuredSpace, relation_names: &[String], out: &mut Vec<String>) -> Value {
    let labels: Vec<String> = s.points.iter().map(|p| p.label.clone()).collect();
    out.push(format!("points: {}", s.len()));
    for p in &s.points {
        out.push(format!("point: {} (sort {})", p.label, p.sort));
    }
    let mut rels = vec![];
    for (r, name) in relation_names.iter().enumerate() {
        let pairs = order_pairs(&labels, |p, q| s.related(r, p, q));
        for pr in &pairs {
            out.push(format!("{name}: {pr}"));
        }
        rels.push(json!({"name": name, "pairs": pairs}));
    }
    let nullaries: Vec<&str> = s.nullaries.iter().map(|&p| labels[p].as_str()).collect();
    if !nullaries.is_empty() {
        out.push(format!("constants: {}", nullaries.join(" ")));
    }
    json!({"points": labels, "relations": rels, "constants": nullaries})
}

fn write_output(path: &Option<String>, doc: &AlgebraDocument) -> std::result::Result<(), Error> {
    if let Some(p) = path {
        fs::write(p, doc.to_json() + "\n").map_err(|e| Error::Precondition(format!("{p}: {e}")))?;
    }
    Ok(())
}

/// A pseudo-input for commands driven by arguments only.
fn argument_input(label: String, variety: VarietyTag) -> Input {
    Input {
        fingerprint: fingerprint_text(&label),
        label,
        variety,
        algebra: FinAlgebra::trivial(&variety.signature()),
    }
}

fn first(inputs: &[Input]) -> &Input {
    &inputs[0]
}

fn dispatch(cli: &Cli, inputs: &mut Vec<Input>) -> Outcome {
    let mut out = vec![];
    let report = match &cli.command {
        Command::Validate(i) => {
            *inputs = load(cli, &i.files, false)?;
            let mut all = true;
            let mut data = vec![];
            for inp in inputs.iter() {
                let r = validate(&inp.algebra, inp.variety);
                all &= r.valid;
                out.push(format!(
                    "{}: valid in {}: {}",
                    inp.label,
                    inp.variety,
                    yes(r.valid)
                ));
                for v in &r.violations {
                    out.push(format!(
                        "violation: {} at {}",
                        v.axiom,
                        names(&inp.algebra, &v.witness)
                    ));
                }
                data.push(
                    json!({"input": inp.label, "valid": r.valid, "violations": r.violations}),
                );
            }
            Report {
                summary: out,
                data: json!(data),
                code: if all { 0 } else { EXIT_INVALID },
            }
        }
        Command::Canonical { name, output } => {
            let name = match (name, cli.canonical.first()) {
                (Some(n), _) | (None, Some(n)) => n.clone(),
                _ => return Err(Error::Precondition("canonical needs a name".into())),
            };
            let c: CanonicalName = name.parse()?;
            let a = canonical_by_name(&name)?;
            let doc = AlgebraDocument::from_algebra(&a, c.variety());
            inputs.push(Input {
                label: format!("canonical {name}"),
                variety: c.variety(),
                fingerprint: doc.fingerprint(),
                algebra: a,
            });
            out.push(format!("algebra: {name} in {}", c.variety()));
            match output {
                Some(p) => {
                    write_output(output, &doc)?;
                    out.push(format!("written: {p}"));
                }
                None => out.extend(doc.to_json().lines().map(String::from)),
            }
            Report::ok(out, serde_json::to_value(&doc).expect("document"))
        }
        Command::Homs(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 2)?;
            let (a, b) = (&inputs[0].algebra, &inputs[1].algebra);
            let homs = enumerate_homs(a, b)?;
            out.push(format!("homs: {}", homs.len()));
            let maps: Vec<String> = homs.iter().map(|h| names(b, h.map())).collect();
            out.extend(maps.iter().map(|m| format!("hom: {m}")));
            Report::ok(
                out,
                json!({"count": homs.len(), "maps": homs.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>()}),
            )
        }
        Command::Subalgebras(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let a = &first(inputs).algebra;
            let subs = enumerate_subuniverses(a);
            out.push(format!("subuniverses: {}", subs.len()));
            out.extend(
                subs.iter()
                    .map(|s| format!("subuniverse: {}", set(a, s.elements()))),
            );
            Report::ok(
                out,
                json!({"count": subs.len(), "subuniverses": subs.iter().map(|s| s.elements().to_vec()).collect::<Vec<_>>()}),
            )
        }
        Command::Congruences(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let a = &first(inputs).algebra;
            let con = congruence_lattice(a);
            out.push(format!("congruences: {}", con.len()));
            out.push(format!("boolean: {}", yes(con.is_boolean())));
            for c in &con.congruences {
                let blocks: Vec<String> = c.blocks().iter().map(|b| set(a, b)).collect();
                out.push(format!("congruence: {}", blocks.join(" ")));
            }
            Report::ok(
                out,
                json!({
                    "count": con.len(),
                    "boolean": con.is_boolean(),
                    "congruences": con.congruences.iter().map(|c| c.blocks().to_vec()).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Dual(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let e = standard_alter_ego(inp.variety);
            let d = natural_dual(&inp.algebra, &e)?;
            let rel_names: Vec<String> = e.relations.iter().map(|r| r.name.clone()).collect();
            let data = space_summary(&d.space, &rel_names, &mut out);
            Report::ok(out, data)
        }
        Command::Edual(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let e = standard_alter_ego(inp.variety);
            let d = natural_dual(&inp.algebra, &e)?;
            let ev = evaluation(&d.space, &e, cli.max_size)?;
            out.push(format!("|A| = {}", inp.algebra.size()));
            out.push(format!("|ED(A)| = {}", ev.algebra.size()));
            Report::ok(
                out,
                json!({"algebra_size": inp.algebra.size(), "evaluation_size": ev.algebra.size()}),
            )
        }
        Command::Roundtrip(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let e = standard_alter_ego(inp.variety);
            let r = verify_full_duality_with_guard(&inp.algebra, &e, cli.max_size)?;
            let iso = |b| {
                if b {
                    "isomorphism"
                } else {
                    "not an isomorphism"
                }
            };
            out.push(format!(
                "|A| = {}, |D(A)| = {}, |ED(A)| = {}",
                r.algebra_size, r.dual_points, r.evaluation_size
            ));
            out.push(format!("evaluation map: {}", iso(r.evaluation_iso)));
            out.push(format!("coevaluation map: {}", iso(r.coevaluation_iso)));
            out.extend(r.witnesses.iter().map(|w| format!("witness: {w}")));
            Report {
                summary: out,
                code: if r.passed() { 0 } else { EXIT_THEOREM },
                data: json!({
                    "algebra_size": r.algebra_size,
                    "dual_points": r.dual_points,
                    "evaluation_size": r.evaluation_size,
                    "evaluation_iso": r.evaluation_iso,
                    "coevaluation_iso": r.coevaluation_iso,
                    "witnesses": r.witnesses,
                }),
            }
        }
        Command::Piggyback(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let m = &inp.algebra;
            let p = piggyback_relations(m, inp.variety.is_bounded())?;
            let tags: Vec<&str> = p.omegas.iter().map(|o| o.tag.as_str()).collect();
            out.push(format!("omegas: {}", tags.join(" ")));
            let mut binary = vec![];
            for (a, wa) in tags.iter().enumerate() {
                for (b, wb) in tags.iter().enumerate() {
                    let rels = p.binary_pairs(a, b);
                    for r in &rels {
                        let pairs: Vec<String> = r
                            .iter()
                            .map(|&(x, y)| format!("({},{})", m.name(x), m.name(y)))
                            .collect();
                        out.push(format!("R[{wa},{wb}]: {{{}}}", pairs.join(",")));
                    }
                    if rels.is_empty() {
                        out.push(format!("R[{wa},{wb}]: none"));
                    }
                    binary.push(json!({"omega": [wa, wb], "relations": rels}));
                }
            }
            let mut unary = vec![];
            if !inp.variety.is_bounded() {
                for (a, wa) in tags.iter().enumerate() {
                    for bit in 0..2 {
                        let sets = p.unary_sets(a, bit);
                        for s in &sets {
                            out.push(format!("R{bit}[{wa}]: {}", set(m, s)));
                        }
                        unary.push(json!({"omega": wa, "value": bit, "sets": sets}));
                    }
                }
            }
            Report::ok(
                out,
                json!({"omegas": tags, "binary": binary, "unary": unary}),
            )
        }
        Command::Dismount(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let d = dismount(&first(inputs).algebra)?;
            out.push(format!("points: {}", d.points.len()));
            out.push(format!("classes: {}", d.classes.len()));
            let classes: Vec<Vec<String>> = d
                .classes
                .iter()
                .map(|c| c.iter().map(|&y| d.point_label(y)).collect())
                .collect();
            for c in &classes {
                out.push(format!("class: {{{}}}", c.join(",")));
            }
            out.push(
                "quotient: order-isomorphic to the Priestley dual of the truth lattice".into(),
            );
            let mut q = vec![];
            let data = poset_summary(d.quotient.poset(), &mut q);
            out.extend(q.into_iter().map(|l| format!("quotient {l}")));
            Report::ok(out, json!({"classes": classes, "quotient": data}))
        }
        Command::KnowledgeDual(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let k = knowledge_dual(&first(inputs).algebra)?;
            out.push("order-isomorphic to the Priestley dual of the knowledge lattice".into());
            let data = poset_summary(&k.space, &mut out);
            Report::ok(out, data)
        }
        Command::Priestley(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let l = if inp.variety.is_lattice() {
                inp.algebra.clone()
            } else {
                t_lattice(&inp.algebra)?
            };
            let d = priestley_dual(&l)?;
            let data = poset_summary(d.space.poset(), &mut out);
            if let OrderedSpace::Pointed(p) = &d.space {
                let pts = p.space.points();
                out.push(format!("bottom: {}", pts[p.bottom]));
                out.push(format!("top: {}", pts[p.top]));
            }
            Report::ok(out, data)
        }
        Command::Prodrep(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let a = &first(inputs).algebra;
            let r = verify_product_representation(a)?;
            out.push(format!("|L| = {}", r.lattice.size()));
            out.push(format!(
                "explicit map: {}",
                if r.explicit {
                    "isomorphism"
                } else {
                    "not an isomorphism"
                }
            ));
            out.push(format!(
                "generic search: {}",
                if r.generic {
                    "isomorphic"
                } else {
                    "not isomorphic"
                }
            ));
            for x in 0..a.size() {
                out.push(format!(
                    "{} -> {}",
                    a.name(x),
                    r.bowtie.algebra.name(r.iso.apply(x))
                ));
            }
            Report {
                summary: out,
                code: if r.explicit && r.generic {
                    0
                } else {
                    EXIT_THEOREM
                },
                data: json!({
                    "lattice_size": r.lattice.size(),
                    "explicit": r.explicit,
                    "generic": r.generic,
                    "map": r.iso.map(),
                }),
            }
        }
        Command::Bowtie {
            inputs: i,
            random,
            output,
        } => {
            let l = if *random {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
                let l = random_lattice(&mut rng, 3, 8);
                match cli.variety {
                    Some(VarietyTag::DMinus) => convert_to(&l, VarietyTag::DMinus)?,
                    _ => l,
                }
            } else {
                *inputs = exactly(load(cli, &i.files, true)?, 1)?;
                first(inputs).algebra.clone()
            };
            let bounded = VarietyTag::of(&l)?.is_bounded();
            let v = if bounded {
                VarietyTag::Db
            } else {
                VarietyTag::DbMinus
            };
            let b = bowtie_in(&l, v.signature())?;
            let doc = AlgebraDocument::from_algebra(&b.algebra, v);
            if *random {
                inputs.push(Input {
                    label: format!("random lattice (seed {})", cli.seed),
                    variety: VarietyTag::of(&l)?,
                    fingerprint: AlgebraDocument::from_algebra(&l, VarietyTag::of(&l)?)
                        .fingerprint(),
                    algebra: l.clone(),
                });
            }
            out.push(format!(
                "|L| = {}, |L (.) L| = {} in {v}",
                l.size(),
                b.algebra.size()
            ));
            out.push(format!("result fingerprint: {}", doc.fingerprint()));
            match output {
                Some(p) => {
                    write_output(output, &doc)?;
                    out.push(format!("written: {p}"));
                }
                None => out.extend(doc.to_json().lines().map(String::from)),
            }
            Report::ok(out, serde_json::to_value(&doc).expect("document"))
        }
        Command::Free { n } => {
            let v = cli.variety.unwrap_or(VarietyTag::Db);
            inputs.push(argument_input(format!("free {v} {n}"), v));
            let f = free_algebra_with_guard(v, *n, cli.max_size)?;
            out.push(format!("variety: {v}"));
            out.push(format!("|F({n})| = {}", f.algebra.size()));
            Report::ok(
                out,
                json!({"variety": v, "generators": n, "size": f.algebra.size()}),
            )
        }
        Command::Coproduct(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 2)?;
            let e = standard_alter_ego(inputs[0].variety);
            let c = coproduct_algebras(&inputs[0].algebra, &inputs[1].algebra, &e, cli.max_size)?;
            out.push(format!(
                "|A| = {}, |B| = {}",
                inputs[0].algebra.size(),
                inputs[1].algebra.size()
            ));
            out.push(format!("|A + B| = {}", c.algebra.size()));
            Report::ok(
                out,
                json!({"size": c.algebra.size(), "left": c.left.map(), "right": c.right.map()}),
            )
        }
        Command::UnifyType(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let u = unification_type(&inp.algebra, inp.variety)?;
            let t = match u.status {
                UnificationStatus::Unsolvable => "unsolvable",
                UnificationStatus::Type1 => "1",
                UnificationStatus::TypeOmega => "omega",
                UnificationStatus::Type0 => "0",
            };
            out.push(format!("type: {t}"));
            let pts = u.dual.points();
            if let Some(w) = &u.witness {
                if let Some((x, y)) = w.interval {
                    out.push(format!("interval: [{}, {}]", pts[x], pts[y]));
                }
                out.push(format!(
                    "pair without bound: {} {}",
                    pts[w.pair.0], pts[w.pair.1]
                ));
            }
            let mut d = vec![];
            let dual = poset_summary(&u.dual, &mut d);
            out.extend(d.into_iter().map(|l| format!("dual {l}")));
            Report::ok(
                out,
                json!({"type": u.status, "witness": u.witness, "dual": dual}),
            )
        }
        Command::Admissible(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let a = &first(inputs).algebra;
            let r = admissibility_check(a)?;
            for c in &r.clause_results {
                match &c.witness {
                    None => out.push(format!("clause {}: holds", c.clause)),
                    Some(w) => out.push(format!("clause {}: fails at {}", c.clause, names(a, w))),
                }
            }
            out.push(format!("dual non-empty: {}", yes(r.dual_nonempty)));
            out.push(format!("dual bounded: {}", yes(r.dual_bounded)));
            out.push(format!("equivalence holds: {}", yes(r.equivalence_holds)));
            match (&r.embedding, &r.embedding_error) {
                (Some(h), _) => out.push(format!(
                    "embedding: into a free algebra of size {}",
                    h.target().size()
                )),
                (None, Some(e)) => out.push(format!("embedding: not built ({e})")),
                (None, None) => out.push("embedding: none".into()),
            }
            Report {
                summary: out,
                code: if r.equivalence_holds { 0 } else { EXIT_THEOREM },
                data: json!({
                    "clauses": r.clause_results,
                    "dual_nonempty": r.dual_nonempty,
                    "dual_bounded": r.dual_bounded,
                    "equivalence_holds": r.equivalence_holds,
                    "embedding": r.embedding.as_ref().map(|h| h.map().to_vec()),
                }),
            }
        }
        Command::EmbedFree(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let inp = first(inputs);
            let e = free_embedding(&inp.algebra, inp.variety)?;
            let how = if e.searched { "search" } else { "displayed" };
            out.push(format!("generators: {} ({how} map)", e.rank));
            out.push(format!("|F({})| = {}", e.rank, e.hom.target().size()));
            out.push(format!("injective: {}", yes(e.hom.is_injective())));
            Report::ok(
                out,
                json!({"generators": e.rank, "construction": how, "free_size": e.hom.target().size(), "map": e.hom.map()}),
            )
        }
        Command::Structural(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 1)?;
            let a = &first(inputs).algebra;
            let r = structural_tests(a)?;
            let inj = match r.injective {
                Some(b) => yes(b).to_string(),
                None => "not applicable".to_string(),
            };
            out.push(format!("injective: {inj}"));
            if let Some(x) = r.uncomplemented {
                out.push(format!("no truth complement: {}", a.name(x)));
            }
            out.push(format!("weakly projective: {}", yes(r.weakly_projective)));
            Report::ok(out, json!(r))
        }
        Command::Iso(i) => {
            *inputs = exactly(load(cli, &i.files, true)?, 2)?;
            let (a, b) = (&inputs[0].algebra, &inputs[1].algebra);
            let iso = find_isomorphism(a, b)?;
            out.push(format!("isomorphic: {}", yes(iso.is_some())));
            if let Some(h) = &iso {
                for x in 0..a.size() {
                    out.push(format!("{} -> {}", a.name(x), b.name(h.apply(x))));
                }
            }
            Report::ok(
                out,
                json!({"isomorphic": iso.is_some(), "map": iso.as_ref().map(|h| h.map().to_vec())}),
            )
        }
        Command::Corpus => {
            inputs.push(argument_input(
                format!("corpus seed {}", cli.seed),
                VarietyTag::Db,
            ));
            let mut data = vec![];
            for e in corpus(cli.seed)? {
                let a = e.algebra();
                let fp = AlgebraDocument::from_algebra(&a, e.variety).fingerprint();
                out.push(format!("{} {} {} {}", e.name, e.variety, a.size(), fp));
                data.push(json!({"name": e.name, "variety": e.variety, "size": a.size(), "fingerprint": fp}));
            }
            Report::ok(out, json!(data))
        }
    };
    Ok(report)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Canonical { .. } => "canonical",
        Command::Homs(_) => "homs",
        Command::Subalgebras(_) => "subalgebras",
        Command::Congruences(_) => "congruences",
        Command::Dual(_) => "dual",
        Command::Edual(_) => "edual",
        Command::Roundtrip(_) => "roundtrip",
        Command::Piggyback(_) => "piggyback",
        Command::Dismount(_) => "dismount",
        Command::KnowledgeDual(_) => "knowledge-dual",
        Command::Priestley(_) => "priestley",
        Command::Prodrep(_) => "prodrep",
        Command::Bowtie { .. } => "bowtie",
        Command::Free { .. } => "free",
        Command::Coproduct(_) => "coproduct",
        Command::UnifyType(_) => "unify-type",
        Command::Admissible(_) => "admissible",
        Command::EmbedFree(_) => "embed-free",
        Command::Structural(_) => "structural",
        Command::Iso(_) => "iso",
        Command::Corpus => "corpus",
    }
}

fn render(cli: &Cli, inputs: &[Input], report: &Report) -> String {
    match cli.format {
        Format::Json => {
            let doc = json!({
                "command": command_name(&cli.command),
                "inputs": inputs.iter().map(|i| json!({
                    "label": i.label,
                    "variety": i.variety,
                    "fingerprint": i.fingerprint,
                })).collect::<Vec<_>>(),
                "exit_code": report.code,
                "summary": report.summary,
                "data": report.data,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("command: {}\n", command_name(&cli.command));
            for i in inputs {
                s.push_str(&format!(
                    "input: {} ({}) fingerprint {}\n",
                    i.label, i.variety, i.fingerprint
                ));
            }
            for l in &report.summary {
                s.push_str(l);
                s.push('\n');
            }
            s
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut inputs = vec![];
    match dispatch(&cli, &mut inputs) {
        Ok(report) => CommandResult {
            code: report.code,
            stdout: render(&cli, &inputs, &report),
            stderr: String::new(),
        },
        Err(e) => CommandResult {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
