//! Canonical JSON formats for instances, arrangements and reduction sources.
//!
//! Writers emit compact JSON with a trailing newline; reading a canonical file
//! and writing it back reproduces it byte for byte. Rationals are
//! `[numerator, denominator]` pairs of arbitrary-size integers with a positive
//! denominator.

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::gen::{AgentRole, BinPackingInstance, Family, GeneratedInstance, PitInstance, ReductionSource};
use crate::model::{Arrangement, Instance, Positions, SeatGraph, UtilityType, ValuationMatrix};
use crate::Rational;

/// Current instance format version.
pub const FORMAT_VERSION: u32 = 1;

/// Serde adapter for one rational.
#[derive(Clone, Debug, PartialEq)]
pub struct JsonRational(pub Rational);

fn big_to_number(x: &BigInt) -> Number {
    x.to_string().parse().expect("integer literal is a valid JSON number")
}

fn number_to_big(n: &Number) -> std::result::Result<BigInt, String> {
    let s = n.to_string();
    s.parse::<BigInt>().map_err(|_| format!("{s} is not an integer"))
}

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [big_to_number(self.0.numer()), big_to_number(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let [num, den] = <[Number; 2]>::deserialize(d)?;
        let num = number_to_big(&num).map_err(D::Error::custom)?;
        let den = number_to_big(&den).map_err(D::Error::custom)?;
        if den <= BigInt::from(0) {
            return Err(D::Error::custom(format!("denominator {den} is not positive")));
        }
        Ok(JsonRational(Rational::new(num, den)))
    }
}

/// A rational as a JSON value.
pub fn rational_to_json(x: &Rational) -> serde_json::Value {
    serde_json::to_value(JsonRational(x.clone())).expect("rationals always serialize")
}

/// Parses a `[num, den]` JSON value.
pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    Ok(JsonRational::deserialize(v).map_err(|e| Error::Format(e.to_string()))?.0)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratedDoc {
    family: Family,
    source: ReductionSource,
    roles: Vec<AgentRole>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    version: u32,
    utility: UtilityType,
    agents: Vec<String>,
    valuations: Vec<Option<JsonRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    positions: Option<Vec<JsonRational>>,
    graph: GraphDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generated: Option<GeneratedDoc>,
}

/// Contents of an instance file: a plain instance, or one produced by a
/// reduction together with its source and agent roles.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Plain(Instance<Rational>),
    Generated(GeneratedInstance<Rational>),
}

impl Document {
    pub fn instance(&self) -> &Instance<Rational> {
        match self {
            Document::Plain(i) => i,
            Document::Generated(g) => &g.instance,
        }
    }

    pub fn into_instance(self) -> Instance<Rational> {
        match self {
            Document::Plain(i) => i,
            Document::Generated(g) => g.instance,
        }
    }
}

fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("document types always serialize");
    s.push('\n');
    s
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn instance_doc(inst: &Instance<Rational>, generated: Option<GeneratedDoc>) -> InstanceDoc {
    let n = inst.agent_count();
    let valuations = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .map(|(p, q)| (p != q).then(|| JsonRational(inst.value(p, q).clone())))
        .collect();
    InstanceDoc {
        version: FORMAT_VERSION,
        utility: inst.utility(),
        agents: inst.names().to_vec(),
        valuations,
        positions: inst
            .positions()
            .map(|pos| pos.coords().iter().cloned().map(JsonRational).collect()),
        graph: GraphDoc {
            n: inst.seats().vertex_count(),
            edges: inst.seats().edges().iter().map(|&(u, v)| [u, v]).collect(),
        },
        generated,
    }
}

pub fn write_instance(inst: &Instance<Rational>) -> String {
    to_canonical(&instance_doc(inst, None))
}

pub fn write_generated(gi: &GeneratedInstance<Rational>) -> String {
    let meta = GeneratedDoc {
        family: gi.family,
        source: gi.source.clone(),
        roles: gi.roles.clone(),
    };
    to_canonical(&instance_doc(&gi.instance, Some(meta)))
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Plain(i) => write_instance(i),
        Document::Generated(g) => write_generated(g),
    }
}

/// Parses and validates an instance file.
pub fn read_document(text: &str) -> Result<Document> {
    let doc: InstanceDoc = parse(text)?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format version {} (expected {FORMAT_VERSION})",
            doc.version
        )));
    }
    let n = doc.agents.len();
    if doc.valuations.len() != n * n {
        return Err(Error::Format(format!(
            "{} valuation entries for {n} agents; expected {}",
            doc.valuations.len(),
            n * n
        )));
    }
    for (i, v) in doc.valuations.iter().enumerate() {
        let diagonal = i / n == i % n;
        if diagonal != v.is_none() {
            return Err(Error::Format(format!(
                "valuation entry {i} must be {}",
                if diagonal { "null" } else { "a rational" }
            )));
        }
    }
    let vals = ValuationMatrix::new(n, doc.valuations.into_iter().map(|v| v.map(|r| r.0)).collect())?;
    let seats = SeatGraph::new(doc.graph.n, doc.graph.edges.into_iter().map(|[u, v]| (u, v)))?;
    let positions = doc
        .positions
        .map(|p| Positions::new(p.into_iter().map(|r| r.0).collect()));
    let instance = Instance::validated(doc.agents, vals, seats, doc.utility, positions)?;
    Ok(match doc.generated {
        None => Document::Plain(instance),
        Some(meta) => {
            if meta.roles.len() != n {
                return Err(Error::Format(format!("{} roles for {n} agents", meta.roles.len())));
            }
            Document::Generated(GeneratedInstance {
                family: meta.family,
                instance,
                source: meta.source,
                roles: meta.roles,
            })
        }
    })
}

/// Parses and validates an instance file, dropping any reduction metadata.
pub fn read_instance(text: &str) -> Result<Instance<Rational>> {
    read_document(text).map(Document::into_instance)
}

pub fn write_arrangement(arr: &Arrangement) -> String {
    to_canonical(arr)
}

pub fn read_arrangement(text: &str) -> Result<Arrangement> {
    parse(text)
}

pub fn write_pit(pit: &PitInstance) -> String {
    to_canonical(pit)
}

pub fn read_pit(text: &str) -> Result<PitInstance> {
    parse(text)
}

pub fn write_binpacking(bp: &BinPackingInstance) -> String {
    to_canonical(bp)
}

pub fn read_binpacking(text: &str) -> Result<BinPackingInstance> {
    parse(text)
}
