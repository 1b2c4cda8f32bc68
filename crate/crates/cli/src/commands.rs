use anyhow::{anyhow, bail, Result};
use serde_json::{json, Map, Value};

use hwenv::envelope::{
    characteristic_tilting, double_dual as double_ringel_dual, envelope as build_envelope,
    ringel_dual as build_ringel_dual, Side, ThinCollection,
};
use hwenv::format::print_module;
use hwenv::hw::{
    canonical_poset as build_canonical_poset, check_hw as run_check_hw, costandard_modules, delta_filtration,
    hw_equivalent as run_hw_equivalent, membership_by_ext_with_cap, standard_modules, verify_standarizable, Filtration,
    HwReport, WeightPoset,
};
use hwenv::recollement::{strictness, CounitTest, RecollementPack, VERIFY_CORPUS};
use hwenv::rep::Representation;

use crate::report::Report;
use crate::{parse_order, CollectionArg, Loaded, Method, Settings, SideArg};

fn module_value(m: &Representation) -> Value {
    json!({ "dims": m.dims(), "module": print_module(m) })
}

fn witness_value(f: &Filtration, poset: &WeightPoset) -> Value {
    match f.witness() {
        Some(w) => Value::from(w.weights.iter().map(|&l| poset.label(l)).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

/// `verdict`, `failing_clause`, `message` and `per_weight` of a highest weight check.
fn hw_fields(r: &mut Report, hw: &HwReport) {
    let per_weight: Vec<Value> = hw
        .per_weight
        .iter()
        .map(|w| {
            json!({
                "weight": hw.poset.label(w.weight),
                "standard_dims": w.standard.dims(),
                "costandard_dims": w.costandard.dims(),
                "end_dim": w.end_dim,
                "st1": w.st1,
                "st2": w.st2.is_found(),
                "st1'": w.st1_prime,
                "st2'": w.st2_prime.is_found(),
                "witness": witness_value(&w.st2, &hw.poset),
            })
        })
        .collect();
    r.set("poset", hw.poset.to_string());
    r.set("per_weight", per_weight);
    r.set(
        "failing_clause",
        hw.failing.map_or(Value::Null, |(c, _)| Value::from(c.to_string())),
    );
    r.set("message", hw.failure_message().map_or(Value::Null, Value::from));
    r.verdict(hw.verdict);
}

fn require_hw(a: &Loaded, s: &Settings) -> Result<HwReport> {
    let hw = run_check_hw(&a.algebra, &a.poset, &s.search)?;
    if !hw.verdict {
        bail!(
            "({}) is not a highest weight structure: {}",
            a.poset,
            hw.failure_message().unwrap_or_default()
        );
    }
    Ok(hw)
}

fn weight_index(poset: &WeightPoset, name: &str) -> Result<usize> {
    poset
        .labels()
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| anyhow!("unknown weight `{name}`"))
}

pub fn check_hw(a: &Loaded, s: &Settings) -> Result<Report> {
    let hw = run_check_hw(&a.algebra, &a.poset, &s.search)?;
    let mut r = Report::new("highest weight check");
    r.set("cartan", a.algebra.cartan());
    hw_fields(&mut r, &hw);
    Ok(r)
}

pub fn standard(a: &Loaded, weight: Option<&str>, costandard: bool) -> Result<Report> {
    let modules = if costandard {
        costandard_modules(&a.algebra, &a.poset)?
    } else {
        standard_modules(&a.algebra, &a.poset)?
    };
    let name = if costandard { "costandard" } else { "standard" };
    let chosen: Vec<usize> = match weight {
        Some(w) => vec![weight_index(&a.poset, w)?],
        None => (0..modules.len()).collect(),
    };
    let mut r = Report::new(format!("{name} modules"));
    let list: Vec<Value> = chosen
        .iter()
        .map(|&l| {
            let mut v = module_value(&modules[l]);
            v["weight"] = Value::from(a.poset.label(l));
            v
        })
        .collect();
    r.set("poset", a.poset.to_string());
    r.set(&format!("{name}s"), list);
    Ok(r)
}

pub fn tilting(a: &Loaded, s: &Settings) -> Result<Report> {
    let t = characteristic_tilting(&a.algebra, &a.poset, &s.search)?;
    let mut r = Report::new("characteristic tilting module");
    let summands: Vec<Value> = t
        .summands
        .iter()
        .enumerate()
        .map(|(l, m)| {
            let mut v = module_value(m);
            v["weight"] = Value::from(a.poset.label(l));
            v
        })
        .collect();
    r.set("summands", summands);
    r.set("dims", t.module.dims());
    Ok(r)
}

pub fn ringel_dual(a: &Loaded, s: &Settings) -> Result<Report> {
    let rd = build_ringel_dual(&a.algebra, &a.poset, &s.search)?;
    let mut r = Report::new("Ringel dual");
    r.set("cartan", rd.cartan());
    r.set("dims", rd.tilting.module.dims());
    r.set("costandards_match", rd.costandards_match);
    r.set("standards_match", rd.standards_match);
    hw_fields(&mut r, &rd.report);
    r.verdict(rd.report.verdict && rd.costandards_match && rd.standards_match);
    Ok(r)
}

pub fn double_dual(a: &Loaded, s: &Settings) -> Result<Report> {
    let (first, second) = double_ringel_dual(&a.algebra, &a.poset, &s.search)?;
    let mut r = Report::new("double Ringel dual");
    let original = a.algebra.cartan();
    r.set(
        "cartan",
        json!({ "original": original, "dual": first.cartan(), "double_dual": second.cartan() }),
    );
    r.set("poset", second.poset.to_string());
    r.verdict(second.cartan() == original && second.report.verdict);
    Ok(r)
}

pub fn canonical_poset(a: &Loaded, s: &Settings) -> Result<Report> {
    let hw = require_hw(a, s)?;
    let deltas = hw.standards();
    let canonical = build_canonical_poset(&deltas, a.poset.labels().to_vec())?;
    let standarizable = verify_standarizable(&deltas, &canonical.opposite())?;
    let dominated = a.poset.dominates(&canonical.opposite());
    let mut r = Report::new("canonical poset of the standard modules");
    r.set("poset", a.poset.to_string());
    r.set("canonical", canonical.to_string());
    r.set("standarizable", standarizable.ok);
    r.set("dominates_opposite", dominated);
    r.verdict(standarizable.ok && dominated);
    Ok(r)
}

pub fn membership(a: &Loaded, m: &Representation, method: Method, s: &Settings) -> Result<Report> {
    let mut r = Report::new("Δ-filtration membership");
    r.set("dims", m.dims());
    let mut verdicts = Map::new();
    if matches!(method, Method::Filtration | Method::All) {
        let deltas = standard_modules(&a.algebra, &a.poset)?;
        let f = delta_filtration(m, &deltas, &a.poset, &s.search)?;
        r.set("witness", witness_value(&f, &a.poset));
        verdicts.insert("filtration".into(), f.is_found().into());
    }
    if matches!(method, Method::Ext | Method::All) {
        let t = characteristic_tilting(&a.algebra, &a.poset, &s.search)?;
        let v = membership_by_ext_with_cap(m, &t.module, s.resolution_cap)?;
        verdicts.insert("ext".into(), v.into());
    }
    if matches!(method, Method::Counit | Method::All) {
        let c = CounitTest::new(&a.algebra, &a.poset, &s.search)?.test(m)?;
        if let Some(l) = c.failing {
            r.set("counit_failing_weight", c.canonical.label(l));
        }
        verdicts.insert("counit".into(), c.verdict.into());
    }
    let values: Vec<bool> = verdicts.values().filter_map(Value::as_bool).collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    r.set("methods", Value::Object(verdicts.clone()));
    if !agree {
        bail!("methods disagree: {}", Value::Object(verdicts));
    }
    r.set("agree", agree);
    r.verdict(values[0]);
    Ok(r)
}

pub fn envelope(a: &Loaded, side: SideArg, collection: CollectionArg, s: &Settings) -> Result<Report> {
    let c = match collection {
        CollectionArg::Standard => ThinCollection::standards(&a.algebra, &a.poset)?,
        CollectionArg::Costandard => ThinCollection::costandards(&a.algebra, &a.poset)?,
    };
    let side = match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let env = build_envelope(&c, side, &s.search)?;
    let mut r = Report::new(format!("{side} envelope"));
    r.set("cartan", env.cartan());
    r.set(
        "generators",
        env.generators.iter().map(module_value).collect::<Vec<_>>(),
    );
    r.set("transports_match", env.transports_match);
    hw_fields(&mut r, &env.report);
    r.verdict(env.report.verdict && env.transports_match);
    Ok(r)
}

fn lower_ideals_containing(poset: &WeightPoset, base: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = poset.len();
    if n > 20 {
        bail!("too many weights ({n}) to enumerate lower ideals");
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if base.iter().all(|b| set.contains(b)) && poset.is_lower_ideal(&set) {
            out.push(set);
        }
    }
    Ok(out)
}

pub fn recollement(a: &Loaded, ideal: &str, with_strictness: bool) -> Result<Report> {
    let ideal: Vec<usize> = ideal
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| weight_index(&a.poset, w))
        .collect::<Result<_>>()?;
    if !a.poset.is_lower_ideal(&ideal) {
        bail!("the given weights do not form a lower ideal of ({})", a.poset);
    }
    let names = |set: &[usize]| -> Vec<String> { set.iter().map(|&v| a.poset.label(v).to_string()).collect() };
    let mut r = Report::new("recollement");
    r.set("ideal", names(&ideal));
    if with_strictness {
        let ideals = lower_ideals_containing(&a.poset, &ideal)?;
        let mut pairs = Vec::new();
        let mut holds = true;
        for (x, i) in ideals.iter().enumerate() {
            for j in &ideals[x + 1..] {
                let comparable = i.iter().all(|v| j.contains(v)) || j.iter().all(|v| i.contains(v));
                let meet: Vec<usize> = i.iter().copied().filter(|v| j.contains(v)).collect();
                if comparable || meet != ideal {
                    continue;
                }
                let st = strictness(&a.algebra, i, j)?;
                holds &= st.holds;
                pairs.push(json!({
                    "i": names(i),
                    "j": names(j),
                    "dims": {
                        "union_over_meet": st.union_over_meet,
                        "j_over_meet": st.j_over_meet,
                        "union_over_i": st.union_over_i,
                    },
                    "holds": st.holds,
                }));
            }
        }
        r.set("pairs", pairs);
        r.verdict(holds);
        return Ok(r);
    }
    let pack = RecollementPack::for_ideal(&a.algebra, &ideal)?;
    r.set("corner", names(&pack.corner_set));
    r.set("serre", names(&pack.serre_simples()));
    r.set(
        "cartan",
        json!({
            "corner": pack.corner_algebra().map(|c| c.cartan()),
            "quotient": pack.quotient_algebra().map(|q| q.cartan()),
        }),
    );
    r.set(
        "dims",
        json!({
            "corner": pack.corner_algebra().map_or(0, |c| c.dim()),
            "quotient": pack.quotient_algebra().map_or(0, |q| q.dim()),
        }),
    );
    pack.verify(VERIFY_CORPUS, 0)?;
    r.verdict(true);
    Ok(r)
}

pub fn hw_equivalent(a: &Loaded, other: &str, s: &Settings) -> Result<Report> {
    let other = parse_order(a.algebra.vertices(), other)?;
    let eq = run_hw_equivalent(&a.algebra, &a.poset, &other, &s.search)?;
    let mut r = Report::new("highest weight equivalence");
    r.set("poset", a.poset.to_string());
    r.set("other", other.to_string());
    r.set("canonical", eq.canonical.to_string());
    r.set("by_domination", eq.by_domination);
    r.set("by_standards", eq.by_standards);
    r.set("message", eq.explanation);
    r.verdict(eq.verdict);
    Ok(r)
}
