use std::collections::BTreeMap;
use std::sync::Arc;

use frobskew::localcoh::{enescu_zqr, tc_param_membership, Membership, SopData, TcMode};
use frobskew::modules::{
    grann_element, special_ideal_lattice, split_ga4, CyclicTower, FiniteCyclics, LatticeOptions, SkewModule,
    SpecialIdealLattice, TowerKind,
};
use frobskew::poly::{parse_polynomial_list, MonomialOrder, PolyRing, Polynomial};
use frobskew::radical::RadicalDecomposition;
use frobskew::skew::GradedIdealChain;
use frobskew::{Error, Ideal, QuotientRing, Result, Ring};
use serde_json::{json, Value};

use crate::report::Report;
use crate::script::{lines, split_top, unwrap_parens, Args, Line, Token};

const CHAIN_BOUND: usize = 4;
const CLOSURE_BOUND: usize = 3;

const COMMANDS: [&str; 8] = [
    "frobpow",
    "frobclosure",
    "grann",
    "lattice",
    "hsl",
    "tc",
    "enescu",
    "ga4",
];

enum Module {
    Finite(FiniteCyclics),
    Tower(CyclicTower),
}

/// Declarations of a script, resolved in order.
#[derive(Default)]
struct Session {
    poly: Option<Arc<PolyRing>>,
    ring: Option<Ring>,
    ideals: BTreeMap<String, Ideal>,
    modules: BTreeMap<String, Module>,
    sop: Option<SopData>,
}

/// Parses `script`, resolves its declarations and runs its single command.
pub fn run(script: &str) -> Result<Report> {
    let all = lines(script)?;
    let mut command: Option<&Line> = None;
    for l in &all {
        if COMMANDS.contains(&l.keyword()) {
            if let Some(first) = command {
                return Err(l.error(
                    l.tokens[0].column,
                    format!("only one command per script; line {} already has one", first.number),
                ));
            }
            command = Some(l);
        }
    }
    let Some(command) = command else {
        return Err(Error::Parse {
            line: all.last().map_or(1, |l| l.number),
            column: 1,
            message: format!("no command; expected one of {}", COMMANDS.join(", ")),
        });
    };
    let mut session = Session::default();
    for l in all.iter().filter(|l| !COMMANDS.contains(&l.keyword())) {
        session.declare(l)?;
    }
    session.dispatch(command)
}

fn usize_list(line: &Line, t: &Token) -> Result<Vec<usize>> {
    split_top(&unwrap_parens(t), ',')
        .iter()
        .map(|p| {
            p.text
                .trim()
                .parse()
                .map_err(|_| line.error(p.column, format!("expected an index, got '{}'", p.text.trim())))
        })
        .collect()
}

fn gens_json(i: &Ideal) -> Value {
    json!(i.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

fn chain_json(c: &GradedIdealChain) -> Value {
    json!(c.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>())
}

fn chain_rows(c: &GradedIdealChain) -> Vec<String> {
    let mut rows: Vec<String> = c
        .entries()
        .iter()
        .enumerate()
        .map(|(n, e)| format!("b_{n} = {e}"))
        .collect();
    rows.push(if c.certified {
        "stable from here on".into()
    } else {
        "tail not certified".into()
    });
    rows
}

impl Session {
    fn poly(&self, line: &Line) -> Result<&Arc<PolyRing>> {
        self.poly
            .as_ref()
            .ok_or_else(|| line.error(line.tokens[0].column, "declare a ring first"))
    }

    /// The coefficient ring, frozen at its first use.
    fn ring(&mut self, line: &Line) -> Result<Ring> {
        if self.ring.is_none() {
            self.ring = Some(QuotientRing::polynomial(self.poly(line)?));
        }
        Ok(self.ring.clone().unwrap())
    }

    fn polys(&mut self, line: &Line, t: &Token) -> Result<Vec<Polynomial>> {
        let ring = self.ring(line)?;
        let inner = unwrap_parens(t);
        ring.parse_list(&inner.text).map_err(|e| line.locate(&inner, e))
    }

    fn poly_one(&mut self, line: &Line, t: &Token) -> Result<Polynomial> {
        let ring = self.ring(line)?;
        ring.parse(&t.text).map_err(|e| line.locate(t, e))
    }

    fn ideal_of(&mut self, line: &Line, t: &Token) -> Result<Ideal> {
        let ring = self.ring(line)?;
        let gens = self.polys(line, t)?;
        Ideal::new(&ring, &gens).map_err(|e| line.locate(t, e))
    }

    fn named_ideal(&self, line: &Line, t: &Token) -> Result<Ideal> {
        self.ideals
            .get(&t.text)
            .cloned()
            .ok_or_else(|| line.error(t.column, format!("unknown ideal '{}'", t.text)))
    }

    fn declare(&mut self, l: &Line) -> Result<()> {
        match l.keyword() {
            "ring" => self.declare_ring(l),
            "quotient" => self.declare_quotient(l),
            "ideal" => self.declare_ideal(l),
            "sop" => {
                if self.sop.is_some() {
                    return Err(l.error(l.tokens[0].column, "a system of parameters is already declared"));
                }
                let t = l
                    .rest
                    .clone()
                    .ok_or_else(|| l.error(l.tokens[0].column, "sop needs parameters"))?;
                let ring = self.ring(l)?;
                let params = self.polys(l, &t)?;
                self.sop = Some(SopData::new(&ring, &params)?);
                Ok(())
            }
            "module" => self.declare_module(l),
            other => Err(l.error(l.tokens[0].column, format!("unknown keyword '{other}'"))),
        }
    }

    fn declare_ring(&mut self, l: &Line) -> Result<()> {
        if self.poly.is_some() {
            return Err(l.error(l.tokens[0].column, "the ring is already declared"));
        }
        let args = Args::of(l, 1)?;
        args.only(l, &["p", "vars", "order"], 0)?;
        let p: u32 = args.number(l, "p", None)?;
        let vars_tok = args.require(l, "vars")?;
        let vars: Vec<String> = vars_tok.text.split(',').map(|v| v.trim().to_string()).collect();
        let order = match args.get("order").map(|t| t.text.as_str()) {
            None | Some("grevlex") => MonomialOrder::Grevlex,
            Some("lex") => MonomialOrder::Lex,
            Some(other) => {
                let t = args.get("order").unwrap();
                return Err(l.error(t.column, format!("unknown order '{other}'; use lex or grevlex")));
            }
        };
        let ring = PolyRing::new(p, &vars, order).map_err(|e| match e {
            Error::InvalidArgument(m) => l.error(l.tokens[1].column, m),
            other => other,
        })?;
        self.poly = Some(ring);
        Ok(())
    }

    fn declare_quotient(&mut self, l: &Line) -> Result<()> {
        if self.ring.is_some() {
            return Err(l.error(
                l.tokens[0].column,
                "quotient must come right after the ring, before anything that uses it",
            ));
        }
        let poly = self.poly(l)?.clone();
        let mut words: Vec<Token> = l.tokens[1..].to_vec();
        let equidim = words.last().is_some_and(|t| t.text == "equidim");
        if equidim {
            words.pop();
        }
        let (Some(first), Some(last)) = (words.first(), words.last()) else {
            return Err(l.error(l.tokens[0].column, "quotient needs relations"));
        };
        let rest = l.rest.as_ref().unwrap();
        let len = last.column + last.text.chars().count() - first.column;
        let text: String = rest.text.chars().take(len).collect();
        let rels = parse_polynomial_list(&poly, &text).map_err(|e| e.at_line(l.number, first.column - 1))?;
        let ring = QuotientRing::new(&poly, &rels)?;
        if equidim {
            ring.assume_equidimensional();
        }
        self.ring = Some(ring);
        Ok(())
    }

    fn declare_ideal(&mut self, l: &Line) -> Result<()> {
        let name = l
            .tokens
            .get(1)
            .ok_or_else(|| l.error(l.tokens[0].column, "ideal needs a name"))?;
        if l.tokens.get(2).map(|t| t.text.as_str()) != Some("=") {
            let column = l.tokens.get(2).map_or(name.column + name.text.len(), |t| t.column);
            return Err(l.error(column, "expected 'ideal <name> = <generators>'"));
        }
        let Some(first) = l.tokens.get(3) else {
            return Err(l.error(l.tokens[2].column, "expected generators after '='"));
        };
        if self.ideals.contains_key(&name.text) {
            return Err(l.error(name.column, format!("ideal '{}' is already declared", name.text)));
        }
        let rest = l.rest.as_ref().unwrap();
        let gens = Token {
            text: rest.text.chars().skip(first.column - rest.column).collect(),
            column: first.column,
        };
        let ideal = self.ideal_of(l, &gens)?;
        self.ideals.insert(name.text.clone(), ideal);
        Ok(())
    }

    fn declare_module(&mut self, l: &Line) -> Result<()> {
        // `module [<name>] finite|cyclic-tower ...`; the name defaults to `m`
        let kinds = ["finite", "cyclic-tower"];
        let (name, kind_at) = match l.tokens.get(1) {
            Some(t) if kinds.contains(&t.text.as_str()) => ("m".to_string(), 1),
            Some(t) => (t.text.clone(), 2),
            None => return Err(l.error(l.tokens[0].column, "module needs a kind: finite or cyclic-tower")),
        };
        let kind = l.tokens.get(kind_at).ok_or_else(|| {
            l.error(
                l.tokens[kind_at - 1].column,
                "module needs a kind: finite or cyclic-tower",
            )
        })?;
        if self.modules.contains_key(&name) {
            return Err(l.error(l.tokens[1].column, format!("module '{name}' is already declared")));
        }
        let ring = self.ring(l)?;
        let args = Args::of(l, kind_at + 1)?;
        let module = match kind.text.as_str() {
            "finite" => {
                args.only(l, &["summands"], 1)?;
                let summands_tok = args.require(l, "summands")?;
                let mut summands = Vec::new();
                for piece in split_top(summands_tok, ';') {
                    summands.push(self.ideal_of(l, &piece)?);
                }
                let action = args.words.first().map_or("frobenius", |w| w.text.as_str());
                match action {
                    "frobenius" => Module::Finite(FiniteCyclics::frobenius(&ring, summands)?),
                    "zero" => Module::Finite(FiniteCyclics::zero_map(&ring, summands)?),
                    other => {
                        let w = &args.words[0];
                        return Err(l.error(w.column, format!("unknown x-action '{other}'; use frobenius or zero")));
                    }
                }
            }
            "cyclic-tower" => {
                args.only(l, &["ideal", "closure", "levels"], 0)?;
                let base = self.ideal_of(l, args.require(l, "ideal")?)?;
                let kind = match args.get("closure") {
                    None => TowerKind::H,
                    Some(_) => TowerKind::G {
                        closure_bound: args.positive(l, "closure", None)? as u32,
                    },
                };
                let mut tower = CyclicTower::new(&base, kind);
                if args.get("levels").is_some() {
                    tower = tower.with_max_level(args.positive(l, "levels", None)?);
                }
                Module::Tower(tower)
            }
            other => return Err(l.error(kind.column, format!("unknown module kind '{other}'"))),
        };
        self.modules.insert(name, module);
        Ok(())
    }

    fn module(&self, line: &Line, args: &Args) -> Result<&Module> {
        match args.get("module") {
            Some(t) => self
                .modules
                .get(&t.text)
                .ok_or_else(|| line.error(t.column, format!("unknown module '{}'", t.text))),
            None if self.modules.len() == 1 => Ok(self.modules.values().next().unwrap()),
            None => Err(line.error(
                line.tokens[0].column,
                if self.modules.is_empty() {
                    "no module declared"
                } else {
                    "several modules; name one with module="
                },
            )),
        }
    }

    fn sop(&self, line: &Line) -> Result<&SopData> {
        self.sop
            .as_ref()
            .ok_or_else(|| line.error(line.tokens[0].column, "declare a system of parameters with 'sop' first"))
    }

    fn dispatch(&mut self, l: &Line) -> Result<Report> {
        let args = Args::of(l, 1)?;
        match l.keyword() {
            "frobpow" => self.frobpow(l, &args),
            "frobclosure" => self.frobclosure(l, &args),
            "grann" => self.grann(l, &args),
            "lattice" => self.lattice(l, &args),
            "hsl" => self.hsl(l, &args),
            "tc" => self.tc(l, &args),
            "enescu" => self.enescu(l, &args),
            "ga4" => self.ga4(l, &args),
            _ => unreachable!("commands are filtered by keyword"),
        }
    }

    fn ideal_arg(&self, l: &Line, args: &Args) -> Result<(String, Ideal)> {
        let t = args
            .words
            .first()
            .ok_or_else(|| l.error(l.tokens[0].column, format!("'{}' needs an ideal name", l.keyword())))?;
        Ok((t.text.clone(), self.named_ideal(l, t)?))
    }

    fn frobpow(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["e"], 1)?;
        let e: u32 = args.number(l, "e", Some(1))?;
        let (name, a) = self.ideal_arg(l, args)?;
        let power = a.frobenius_power(e)?;
        let gens: Vec<String> = power.generators().iter().map(|g| g.to_string()).collect();
        Ok(Report::new(json!({ "ideal": name, "e": e, "generators": gens }))
            .row("ideal", &name)
            .row("e", e.to_string())
            .row("generators", gens.join(", ")))
    }

    fn frobclosure(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["bound"], 1)?;
        let bound = args.positive(l, "bound", Some(CLOSURE_BOUND))?;
        let (name, a) = self.ideal_arg(l, args)?;
        let closure = a.frobenius_closure(u32::try_from(bound).unwrap_or(u32::MAX))?;
        let chain: Vec<String> = closure.chain.iter().map(|j| j.to_string()).collect();
        Ok(Report::new(json!({
            "ideal": name,
            "bound": bound,
            "chain": chain,
            "closure": gens_json(closure.closure()),
            "stabilized": closure.stabilized,
        }))
        .row("ideal", &name)
        .row("closure", closure.closure().to_string())
        .row("stabilized", closure.stabilized.to_string())
        .rows("chain", chain.iter().enumerate().map(|(e, j)| format!("J_{e} = {j}"))))
    }

    fn grann(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["module", "elem", "bound", "level"], 0)?;
        let bound = args.positive(l, "bound", Some(CHAIN_BOUND))?;
        let elem_tok = args.require(l, "elem")?.clone();
        let parts = self.polys(l, &elem_tok)?;
        let level: usize = args.number(l, "level", Some(0))?;
        let (shown, chain) = match self.module(l, args)? {
            Module::Finite(m) => {
                if args.get("level").is_some() {
                    return Err(l.error(args.get("level").unwrap().column, "level= applies to towers only"));
                }
                let h = m.element(&parts).map_err(|e| match e {
                    Error::InvalidArgument(msg) => l.error(elem_tok.column, msg),
                    other => other,
                })?;
                (m.show(&h), grann_element(m, &h, bound)?)
            }
            Module::Tower(m) => {
                let [r] = parts.as_slice() else {
                    return Err(l.error(elem_tok.column, "a tower element is a single polynomial"));
                };
                let h = m.element(level, r)?;
                (m.show(&h), grann_element(m, &h, bound)?)
            }
        };
        Ok(Report::new(json!({
            "element": shown,
            "bound": bound,
            "chain": chain_json(&chain),
            "limit": gens_json(chain.limit()),
            "certified": chain.certified,
        }))
        .row("element", &shown)
        .row("limit", chain.limit().to_string())
        .row("certified", chain.certified.to_string())
        .rows("chain", chain_rows(&chain)))
    }

    fn lattice(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["module", "bound", "gens"], 0)?;
        let opts = LatticeOptions {
            bound: args.positive(l, "bound", Some(CHAIN_BOUND))?,
            ..LatticeOptions::default()
        };
        let gens_tok = args.get("gens").cloned();
        let mut vectors = Vec::new();
        if let Some(t) = &gens_tok {
            for piece in split_top(t, ';') {
                vectors.push((piece.clone(), self.polys(l, &piece)?));
            }
        }
        let lat = match self.module(l, args)? {
            Module::Finite(m) => {
                let gens = match &gens_tok {
                    Some(_) => Some(
                        vectors
                            .iter()
                            .map(|(t, v)| m.element(v).map_err(|e| l.locate(t, e)))
                            .collect::<Result<Vec<_>>>()?,
                    ),
                    None => None,
                };
                special_ideal_lattice(m, gens.as_deref(), &opts)?
            }
            Module::Tower(m) => {
                let gens = match &gens_tok {
                    Some(_) => Some(
                        vectors
                            .iter()
                            .map(|(t, v)| match v.as_slice() {
                                [r] => m.element(0, r),
                                _ => Err(l.error(t.column, "a tower element is a single polynomial")),
                            })
                            .collect::<Result<Vec<_>>>()?,
                    ),
                    None => None,
                };
                special_ideal_lattice(m, gens.as_deref(), &opts)?
            }
        };
        Ok(lattice_report(&lat))
    }

    fn hsl(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["module"], 0)?;
        let Module::Finite(m) = self.module(l, args)? else {
            return Err(Error::Refused(
                "HSL numbers are computed exactly on the finite backend only".into(),
            ));
        };
        let lin = m.to_linear()?;
        let gamma = lin.gamma_x();
        let hsl = lin.hsl_number();
        let basis: Vec<String> = gamma.basis().iter().map(|v| lin.show(v)).collect();
        Ok(Report::new(json!({
            "hsl": hsl,
            "dimension": lin.dim(),
            "torsion_dimension": gamma.dim(),
            "torsion_basis": basis,
        }))
        .row("hsl", hsl.to_string())
        .row("dimension", lin.dim().to_string())
        .row("torsion dimension", gamma.dim().to_string())
        .rows("torsion basis", basis))
    }

    fn tc(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["elem", "j", "bound", "mode"], 0)?;
        let r = self.poly_one(l, args.require(l, "elem")?)?;
        let j: u64 = args.number(l, "j", Some(1))?;
        if j == 0 {
            return Err(l.error(args.get("j").unwrap().column, "'j' must be at least 1"));
        }
        let bound = args.positive(l, "bound", Some(CHAIN_BOUND))?;
        let mode = match args.get("mode") {
            None => TcMode::Chain,
            Some(t) if t.text == "chain" => TcMode::Chain,
            Some(t) => {
                let Some(body) = t.text.strip_prefix("test:") else {
                    return Err(l.error(
                        t.column,
                        format!("unknown mode '{}'; use chain or test:<c>,<w0>", t.text),
                    ));
                };
                let Some((c, w0)) = body.rsplit_once(',') else {
                    return Err(l.error(t.column, "test mode needs 'test:<c>,<w0>'"));
                };
                let c_tok = Token {
                    text: c.to_string(),
                    column: t.column + 5,
                };
                let w0_column = c_tok.column + c.chars().count() + 1;
                let w0: u32 = w0
                    .parse()
                    .map_err(|_| l.error(w0_column, format!("w0 must be a non-negative integer, got '{w0}'")))?;
                TcMode::TestElement {
                    c: self.poly_one(l, &c_tok)?,
                    w0,
                }
            }
        };
        let report = tc_param_membership(self.sop(l)?, &r, j, &mode, bound)?;
        Ok(tc_report(&report))
    }

    fn enescu(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["samples", "bound"], 0)?;
        let samples = self.polys(l, args.require(l, "samples")?)?;
        let bound = args.positive(l, "bound", Some(CHAIN_BOUND))?;
        let z = enescu_zqr(self.sop(l)?, &samples, bound)?;
        let per_sample: Vec<Value> = z
            .reports
            .iter()
            .map(|r| {
                json!({
                    "sample": r.b.to_string(),
                    "q_b": gens_json(&r.qb),
                    "chain": chain_json(&r.chain),
                    "stabilized": r.stabilized,
                    "positive_height": r.positive_height,
                })
            })
            .collect();
        let maximal: Vec<Value> = z
            .maximal
            .iter()
            .zip(&z.prime)
            .map(|(m, p)| json!({ "ideal": gens_json(m), "prime": p }))
            .collect();
        let skipped: Vec<String> = z.skipped.iter().map(|b| b.to_string()).collect();
        let describe_prime = |p: &Option<bool>| match p {
            Some(true) => "prime",
            Some(false) => "not prime",
            None => "primality not certified",
        };
        Ok(Report::new(json!({
            "samples": per_sample,
            "skipped": skipped,
            "maximal": maximal,
        }))
        .rows(
            "q(b)",
            z.reports.iter().map(|r| {
                let tail = if r.stabilized { "" } else { ", not stabilized" };
                format!("q({}) = {}{tail}", r.b, r.qb)
            }),
        )
        .rows("skipped", skipped.iter().map(|b| format!("{b} (in q, so q(b) = R)")))
        .rows(
            "maximal",
            z.maximal
                .iter()
                .zip(&z.prime)
                .map(|(m, p)| format!("{m} ({})", describe_prime(p))),
        ))
    }

    fn ga4(&mut self, l: &Line, args: &Args) -> Result<Report> {
        args.only(l, &["module", "b", "U"], 0)?;
        let ring = self.ring(l)?;
        let b_tok = args.require(l, "b")?;
        let b = RadicalDecomposition::parse(&ring, &b_tok.text).map_err(|e| l.locate(b_tok, e))?;
        let u = usize_list(l, args.require(l, "U")?)?;
        let report = match self.module(l, args)? {
            Module::Finite(m) => split_ga4(m, &b, &u)?,
            Module::Tower(m) => split_ga4(m, &b, &u)?,
        };
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        Ok(Report::new(json!({
            "a": gens_json(&report.a),
            "c": gens_json(&report.c),
            "L": report.l,
            "N": report.n,
            "checks": checks,
            "passed": report.all_passed(),
        }))
        .row("a", report.a.to_string())
        .row("c", report.c.to_string())
        .row("L", &report.l)
        .row("N", &report.n)
        .rows("checks", report.checks.iter().map(check_row)))
    }
}

fn check_row(c: &frobskew::modules::Check) -> String {
    format!("{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail)
}

fn lattice_report(lat: &SpecialIdealLattice) -> Report {
    let ideals: Vec<Value> = lat.entries.iter().map(|e| gens_json(&e.ideal)).collect();
    let primes: Vec<Value> = lat.primes().into_iter().map(gens_json).collect();
    let delta: Vec<Value> = lat.entries.iter().map(|e| json!(e.submodule)).collect();
    let checks: Vec<Value> = lat
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let mut r = Report::new(json!({
        "ideals": ideals,
        "primes": primes,
        "delta": delta,
        "complete": lat.complete,
        "checks": checks,
    }))
    .rows(
        "ideals",
        lat.entries.iter().map(|e| {
            let mut s = e.ideal.to_string();
            if e.prime {
                s.push_str("  prime");
            }
            if !e.certified {
                s.push_str("  (uncertified tail)");
            }
            s
        }),
    )
    .rows(
        "delta",
        lat.entries
            .iter()
            .map(|e| format!("{} -> {}", e.ideal, e.submodule.as_deref().unwrap_or("(not available)"))),
    )
    .rows("maximal primes", lat.maximal_primes.iter().map(|p| p.to_string()));
    if let Some(s) = &lat.smallest_positive_height {
        r = r.row("smallest positive height", s.to_string());
    }
    r.row("complete", lat.complete.to_string())
        .rows("checks", lat.checks.iter().map(check_row))
}

fn tc_report(rep: &frobskew::localcoh::TcReport) -> Report {
    let member = match rep.member {
        Membership::Member => json!(true),
        Membership::NotMember => json!(false),
        Membership::UnknownAtBound => json!("unknown-at-bound"),
    };
    let chain = rep.chain.as_ref().map_or(json!([]), chain_json);
    let limit = rep.limit.as_ref().map_or(json!([]), gens_json);
    let mut r = Report::new(json!({
        "member": member,
        "chain": chain,
        "limit": limit,
        "positive_height": rep.positive_height,
        "stabilized": rep.stabilized,
        "warnings": rep.warnings,
    }))
    .row("member", rep.member.to_string());
    if let Some(lim) = &rep.limit {
        r = r.row("limit", lim.to_string());
    }
    if let Some(h) = rep.positive_height {
        r = r.row("positive height", h.to_string());
    }
    r = r.row("stabilized", rep.stabilized.to_string());
    if let Some(c) = &rep.chain {
        r = r.rows("chain", chain_rows(c));
    }
    r.rows("warnings", rep.warnings.clone())
}
