use serde::{Deserialize, Serialize};

use super::{Derivation, Matroid, Repr};
use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::linalg::{PrimeFieldMatrix, RationalMatrix};
use crate::subset::SubsetMask;

/// The matroid file format: one JSON document tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MatroidDoc {
    LinearGfp {
        p: u64,
        columns: Vec<Vec<i64>>,
    },
    LinearQ {
        columns: Vec<Vec<String>>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Transversal {
        n: usize,
        sets: Vec<Vec<usize>>,
    },
    Uniform {
        r: usize,
        n: usize,
    },
    Paving {
        n: usize,
        d: usize,
        forbidden: Vec<Vec<usize>>,
    },
    Derived(DerivedDoc),
}

/// `{"type":"derived","op":...,"inner":{...}}` plus the operator's parameters:
/// `elements` (delete, contract), `k` (truncate), `t` (free_extend),
/// `element`/`copies` (parallel), `other` (direct_sum).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedDoc {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
    pub inner: Box<MatroidDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<Box<MatroidDoc>>,
}

fn rows_of<T>(columns: &[Vec<T>]) -> usize {
    columns.first().map_or(0, Vec::len)
}

pub(super) fn from_doc(doc: &MatroidDoc) -> Result<Matroid> {
    match doc {
        MatroidDoc::LinearGfp { p, columns } => {
            Matroid::linear_gfp(PrimeFieldMatrix::new(*p, rows_of(columns), columns)?)
        }
        MatroidDoc::LinearQ { columns } => {
            let cols = columns
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Matroid::linear_q(RationalMatrix::new(rows_of(columns), cols)?)
        }
        MatroidDoc::Graphic { vertices, edges } => {
            let edges: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
            Matroid::graphic(*vertices, &edges)
        }
        MatroidDoc::Transversal { n, sets } => Matroid::transversal(*n, sets),
        MatroidDoc::Uniform { r, n } => Matroid::uniform(*r, *n),
        MatroidDoc::Paving { n, d, forbidden } => {
            let blocks = forbidden
                .iter()
                .map(|b| to_mask(b, *n))
                .collect::<Result<Vec<_>>>()?;
            Matroid::paving(*n, *d, &blocks)
        }
        MatroidDoc::Derived(dd) => {
            let inner = from_doc(&dd.inner)?;
            let need = |v: Option<usize>, name: &str| {
                v.ok_or_else(|| Error::input(format!("derived op {:?} needs {name:?}", dd.op)))
            };
            let op = match dd.op.as_str() {
                "dual" => Derivation::Dual,
                "delete" | "contract" => {
                    let els = dd.elements.as_ref().ok_or_else(|| {
                        Error::input(format!("derived op {:?} needs \"elements\"", dd.op))
                    })?;
                    let mask = to_mask(els, inner.ground_size())?;
                    if dd.op == "delete" {
                        Derivation::Delete(mask)
                    } else {
                        Derivation::Contract(mask)
                    }
                }
                "truncate" => Derivation::Truncate(need(dd.k, "k")?),
                "free_extend" => Derivation::FreeExtend(need(dd.t, "t")?),
                "parallel" => Derivation::Parallel {
                    element: need(dd.element, "element")?,
                    copies: need(dd.copies, "copies")?,
                },
                "direct_sum" => {
                    let other = dd
                        .other
                        .as_ref()
                        .ok_or_else(|| Error::input("derived op \"direct_sum\" needs \"other\""))?;
                    Derivation::DirectSum(from_doc(other)?)
                }
                other => return Err(Error::input(format!("unknown derived op {other:?}"))),
            };
            inner.derive(op)
        }
    }
}

fn to_mask(elements: &[usize], n: usize) -> Result<SubsetMask> {
    if let Some(&bad) = elements.iter().find(|&&e| e >= n) {
        return Err(Error::input(format!("element {bad} outside 0..{n}")));
    }
    Ok(elements.iter().copied().collect())
}

pub(super) fn to_doc(m: &Matroid) -> MatroidDoc {
    match m.repr() {
        Repr::LinearGfp(mat) => MatroidDoc::LinearGfp {
            p: mat.modulus(),
            columns: (0..mat.cols())
                .map(|c| mat.column(c).iter().map(|&v| v as i64).collect())
                .collect(),
        },
        Repr::LinearQ(mat) => MatroidDoc::LinearQ {
            columns: (0..mat.cols())
                .map(|c| mat.column(c).iter().map(format_rational).collect())
                .collect(),
        },
        Repr::Graphic(g) => MatroidDoc::Graphic {
            vertices: g.vertices,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        },
        Repr::Transversal(f) => MatroidDoc::Transversal {
            n: m.ground_size(),
            sets: f.sets.clone(),
        },
        Repr::Uniform => MatroidDoc::Uniform {
            r: m.full_rank(),
            n: m.ground_size(),
        },
        Repr::Paving(p) => MatroidDoc::Paving {
            n: m.ground_size(),
            d: p.d,
            forbidden: p.blocks.iter().map(|b| b.iter().collect()).collect(),
        },
        Repr::Derived { op, inner, .. } => {
            let mut dd = DerivedDoc {
                op: String::new(),
                elements: None,
                k: None,
                t: None,
                element: None,
                copies: None,
                inner: Box::new(to_doc(inner)),
                other: None,
            };
            dd.op = match op {
                Derivation::Dual => "dual",
                Derivation::Delete(s) => {
                    dd.elements = Some(s.iter().collect());
                    "delete"
                }
                Derivation::Contract(s) => {
                    dd.elements = Some(s.iter().collect());
                    "contract"
                }
                Derivation::Truncate(k) => {
                    dd.k = Some(*k);
                    "truncate"
                }
                Derivation::FreeExtend(t) => {
                    dd.t = Some(*t);
                    "free_extend"
                }
                Derivation::Parallel { element, copies } => {
                    dd.element = Some(*element);
                    dd.copies = Some(*copies);
                    "parallel"
                }
                Derivation::DirectSum(other) => {
                    dd.other = Some(Box::new(to_doc(other)));
                    "direct_sum"
                }
            }
            .to_string();
            MatroidDoc::Derived(dd)
        }
    }
}
