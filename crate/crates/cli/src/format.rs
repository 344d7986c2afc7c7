//! Instance files, shape files and the plane flag.

use mayocut::bisection::Atom;
use mayocut::measure::Component;
use mayocut::scalar::{format_rational, parse_rational};
use mayocut::{AtomicMeasure, Hyperplane, Instance, Point, Rational, Scalar, ShapeSpec};
use serde::de::{Deserializer, Error as _, IgnoredAny};
use serde::Deserialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};

/// An exact number: a string holding `p/q` or a decimal, or a bare JSON
/// number read digit by digit.
struct Exact(Rational);

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Box::<RawValue>::deserialize(d)?;
        let text = raw.get();
        let literal = if text.starts_with('"') {
            serde_json::from_str::<String>(text).map_err(D::Error::custom)?
        } else {
            text.to_string()
        };
        parse_rational(&literal)
            .map(Exact)
            .ok_or_else(|| D::Error::custom(format!("{text} is not a fraction or decimal")))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    dimension: usize,
    sets: Vec<SetDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    name: String,
    atoms: Vec<AtomDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomDoc {
    point: Vec<Exact>,
    mass: Option<Exact>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeDoc {
    dimension: usize,
    shapes: Vec<ShapeEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeEntry {
    name: String,
    components: Vec<ComponentDoc>,
}

fn unit_density() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum ComponentDoc {
    #[serde(alias = "ball")]
    Disk {
        center: Vec<f64>,
        radius: f64,
        #[serde(default = "unit_density")]
        density: f64,
    },
    Box {
        min: Vec<f64>,
        max: Vec<f64>,
        #[serde(default = "unit_density")]
        density: f64,
    },
}

#[derive(Deserialize)]
struct Probe {
    sets: Option<IgnoredAny>,
    shapes: Option<IgnoredAny>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Instance(Instance),
    Shapes(Vec<ShapeSpec>),
}

impl Document {
    pub fn dim(&self) -> usize {
        match self {
            Document::Instance(i) => i.dim(),
            Document::Shapes(s) => s.first().map_or(0, ShapeSpec::dim),
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, String> {
    let probe: Probe = serde_json::from_str(text).map_err(|e| e.to_string())?;
    match (probe.sets, probe.shapes) {
        (Some(_), None) => parse_instance(text).map(Document::Instance),
        (None, Some(_)) => parse_shapes(text).map(Document::Shapes),
        _ => Err("expected exactly one of a \"sets\" or a \"shapes\" array".into()),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, String> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut measures = Vec::with_capacity(doc.sets.len());
    for set in doc.sets {
        let mut atoms = Vec::with_capacity(set.atoms.len());
        for (i, atom) in set.atoms.into_iter().enumerate() {
            if atom.point.len() != doc.dimension {
                return Err(format!(
                    "set {} atom {i}: {} coordinates in dimension {}",
                    set.name,
                    atom.point.len(),
                    doc.dimension
                ));
            }
            let mass = atom.mass.map_or_else(|| Rational::from_i64(1), |m| m.0);
            atoms.push(Atom {
                point: Point::new(atom.point.into_iter().map(|x| x.0).collect()),
                mass,
            });
        }
        measures.push(
            AtomicMeasure::new(set.name.clone(), atoms)
                .map_err(|e| format!("set {}: {e}", set.name))?,
        );
    }
    Instance::new(measures).map_err(|e| e.to_string())
}

pub fn parse_shapes(text: &str) -> Result<Vec<ShapeSpec>, String> {
    let doc: ShapeDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut shapes = Vec::with_capacity(doc.shapes.len());
    for entry in doc.shapes {
        let components: Vec<Component> = entry
            .components
            .into_iter()
            .map(|c| match c {
                ComponentDoc::Disk {
                    center,
                    radius,
                    density,
                } => Component::Ball {
                    center,
                    radius,
                    density,
                },
                ComponentDoc::Box { min, max, density } => Component::Box { min, max, density },
            })
            .collect();
        if let Some(c) = components.iter().find(|c| c.dim() != doc.dimension) {
            return Err(format!(
                "shape {}: component of dimension {} in dimension {}",
                entry.name,
                c.dim(),
                doc.dimension
            ));
        }
        shapes.push(
            ShapeSpec::new(entry.name.clone(), components)
                .map_err(|e| format!("shape {}: {e}", entry.name))?,
        );
    }
    if shapes.is_empty() {
        return Err("no shapes given".into());
    }
    Ok(shapes)
}

/// Instance file text with every number written as an exact fraction string.
pub fn write_instance(inst: &Instance) -> String {
    let sets: Vec<Value> = inst
        .measures()
        .iter()
        .map(|m| {
            let atoms: Vec<Value> = m
                .atoms()
                .iter()
                .map(|a| {
                    let point: Vec<String> = a.point.coords().iter().map(format_rational).collect();
                    json!({ "point": point, "mass": format_rational(&a.mass) })
                })
                .collect();
            json!({ "name": m.name(), "atoms": atoms })
        })
        .collect();
    let doc = json!({ "dimension": inst.dim(), "sets": sets });
    serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
}

/// `u=a,b,…;c=v`, parts in either order, canonicalized.
pub fn parse_plane(text: &str) -> Result<Hyperplane<Rational>, String> {
    let (mut normal, mut offset) = (None, None);
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("plane part {part:?} lacks '='"))?;
        let number = |s: &str| {
            parse_rational(s).ok_or_else(|| format!("{s:?} is not a fraction or decimal"))
        };
        match key.trim() {
            "u" => {
                normal = Some(
                    value
                        .split(',')
                        .map(number)
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
            "c" => offset = Some(number(value)?),
            other => return Err(format!("unknown plane key {other:?}")),
        }
    }
    let normal = normal.ok_or("plane needs u=…")?;
    let offset = offset.ok_or("plane needs c=…")?;
    Hyperplane::new(normal, offset).map_err(|e| e.to_string())
}

pub fn parse_list<T>(
    text: &str,
    what: &str,
    parse: impl Fn(&str) -> Option<T>,
) -> Result<Vec<T>, String> {
    text.split(',')
        .map(|s| parse(s.trim()).ok_or_else(|| format!("{what}: cannot read {s:?}")))
        .collect()
}
