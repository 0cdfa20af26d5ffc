//! Poset maps and the checks that place a map in the hierarchy
//! map ⊇ embedding ⊇ saturated embedding ⊇ dimension-preserving ⊇ coheight-preserving.

use std::collections::HashMap;
use std::fmt;

use crate::error::{PosetError, Result};
use crate::poset::{NodeId, Poset};

/// A total assignment from the nodes of `dom` to the nodes of `cod`.
///
/// Nothing beyond totality is enforced; order properties are queried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    dom: Poset,
    cod: Poset,
    assign: Vec<NodeId>,
}

/// Levels of the map hierarchy, weakest first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapProperty {
    Map,
    Embedding,
    Saturated,
    DimensionPreserving,
    Coheight,
}

/// The first reason a map fails a property. Node names are labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    /// `x ≤ y` in the domain but `f(x) ≰ f(y)`.
    NotOrderPreserving {
        x: String,
        y: String,
    },
    /// `f(x) ≤ f(y)` but `x ≰ y`.
    NotOrderReflecting {
        x: String,
        y: String,
    },
    /// `x <_c y` in the domain but `f(x)` is not covered by `f(y)`.
    CoverNotPreserved {
        x: String,
        y: String,
    },
    DimensionMismatch {
        dom: usize,
        cod: usize,
    },
    /// No preimage of `target` has an up-set of the same dimension as `target`'s.
    CoheightMismatch {
        target: String,
        target_dim: usize,
        best_preimage_dim: Option<usize>,
    },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::NotOrderPreserving { x, y } => {
                write!(f, "{x} ≤ {y} but their images are not ordered")
            }
            MapViolation::NotOrderReflecting { x, y } => {
                write!(f, "images of {x} and {y} are ordered but {x} ≰ {y}")
            }
            MapViolation::CoverNotPreserved { x, y } => {
                write!(
                    f,
                    "{y} covers {x} but the image of {y} does not cover the image of {x}"
                )
            }
            MapViolation::DimensionMismatch { dom, cod } => {
                write!(
                    f,
                    "domain dimension {dom} differs from codomain dimension {cod}"
                )
            }
            MapViolation::CoheightMismatch {
                target,
                target_dim,
                best_preimage_dim,
            } => match best_preimage_dim {
                Some(d) => write!(
                    f,
                    "up-set of {target} has dimension {target_dim} but preimages reach at most {d}"
                ),
                None => write!(f, "{target} has no preimage"),
            },
        }
    }
}

impl PosetMap {
    pub fn new(dom: Poset, cod: Poset, assign: Vec<NodeId>) -> Result<PosetMap> {
        if assign.len() != dom.len() {
            return Err(PosetError::NonTotalMap {
                expected: dom.len(),
                got: assign.len(),
            });
        }
        for &y in &assign {
            cod.check_node(y)?;
        }
        Ok(PosetMap { dom, cod, assign })
    }

    /// Builds a map from `(domain label, codomain label)` pairs. Every domain label must
    /// appear exactly once.
    pub fn from_label_pairs<A: AsRef<str>, B: AsRef<str>>(
        dom: Poset,
        cod: Poset,
        pairs: &[(A, B)],
    ) -> Result<PosetMap> {
        let mut assigned: HashMap<NodeId, NodeId> = HashMap::with_capacity(pairs.len());
        for (a, b) in pairs {
            let x = dom.require(a.as_ref())?;
            let y = cod.require(b.as_ref())?;
            if assigned.insert(x, y).is_some() {
                return Err(PosetError::DuplicateAssignment(a.as_ref().to_string()));
            }
        }
        if assigned.len() != dom.len() {
            return Err(PosetError::NonTotalMap {
                expected: dom.len(),
                got: assigned.len(),
            });
        }
        let assign = dom.nodes().map(|x| assigned[&x]).collect();
        Ok(PosetMap { dom, cod, assign })
    }

    pub fn identity(p: &Poset) -> PosetMap {
        PosetMap {
            dom: p.clone(),
            cod: p.clone(),
            assign: p.nodes().collect(),
        }
    }

    /// The map sending each node of `dom` to the node of `cod` with the same label.
    pub fn by_label(dom: &Poset, cod: &Poset) -> Result<PosetMap> {
        let assign = dom
            .nodes()
            .map(|x| cod.require(dom.label(x)))
            .collect::<Result<Vec<_>>>()?;
        PosetMap::new(dom.clone(), cod.clone(), assign)
    }

    pub fn dom(&self) -> &Poset {
        &self.dom
    }

    pub fn cod(&self) -> &Poset {
        &self.cod
    }

    pub fn assign(&self) -> &[NodeId] {
        &self.assign
    }

    pub fn apply(&self, x: NodeId) -> NodeId {
        self.assign[x.index()]
    }

    /// `(domain label, codomain label)` pairs in domain label order.
    pub fn label_pairs(&self) -> Vec<(&str, &str)> {
        let mut pairs: Vec<_> = self
            .dom
            .nodes()
            .map(|x| (self.dom.label(x), self.cod.label(self.apply(x))))
            .collect();
        pairs.sort();
        pairs
    }

    /// Image of the map, label-sorted.
    pub fn image(&self) -> Vec<NodeId> {
        self.cod.label_sorted(self.assign.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.len()
    }

    fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.dom
            .nodes()
            .flat_map(move |x| self.dom.nodes().map(move |y| (x, y)))
    }

    fn names(&self, x: NodeId, y: NodeId) -> (String, String) {
        (self.dom.label(x).to_string(), self.dom.label(y).to_string())
    }

    fn monotone_violation(&self) -> Option<MapViolation> {
        self.pairs()
            .find(|&(x, y)| self.dom.leq(x, y) && !self.cod.leq(self.apply(x), self.apply(y)))
            .map(|(x, y)| {
                let (x, y) = self.names(x, y);
                MapViolation::NotOrderPreserving { x, y }
            })
    }

    fn reflecting_violation(&self) -> Option<MapViolation> {
        self.pairs()
            .find(|&(x, y)| self.cod.leq(self.apply(x), self.apply(y)) && !self.dom.leq(x, y))
            .map(|(x, y)| {
                let (x, y) = self.names(x, y);
                MapViolation::NotOrderReflecting { x, y }
            })
    }

    fn cover_violation(&self) -> Option<MapViolation> {
        self.pairs()
            .find(|&(x, y)| self.dom.covers(x, y) && !self.cod.covers(self.apply(x), self.apply(y)))
            .map(|(x, y)| {
                let (x, y) = self.names(x, y);
                MapViolation::CoverNotPreserved { x, y }
            })
    }

    fn dimension_violation(&self) -> Option<MapViolation> {
        let (dom, cod) = (self.dom.dim(), self.cod.dim());
        (dom != cod).then_some(MapViolation::DimensionMismatch { dom, cod })
    }

    fn coheight_mismatch(&self, along: &[NodeId]) -> Option<MapViolation> {
        along.iter().find_map(|&p| {
            let target_dim = self.cod.up_dim(p);
            let best = self
                .dom
                .nodes()
                .filter(|&x| self.apply(x) == p)
                .map(|x| self.dom.up_dim(x))
                .max();
            let matched = self
                .dom
                .nodes()
                .any(|x| self.apply(x) == p && self.dom.up_dim(x) == target_dim);
            (!matched).then(|| MapViolation::CoheightMismatch {
                target: self.cod.label(p).to_string(),
                target_dim,
                best_preimage_dim: best,
            })
        })
    }

    /// First violation of `property`, checking weaker levels of the hierarchy first.
    /// Coheight is checked along the codomain's minimal nodes.
    pub fn violation(&self, property: MapProperty) -> Option<MapViolation> {
        self.violation_along(property, None)
    }

    /// Like [`PosetMap::violation`], with an explicit target set for the coheight level.
    pub fn violation_along(
        &self,
        property: MapProperty,
        along: Option<&[NodeId]>,
    ) -> Option<MapViolation> {
        use MapProperty::*;
        let v = self.monotone_violation();
        if v.is_some() || property == Map {
            return v;
        }
        let v = self.reflecting_violation();
        if v.is_some() || property == Embedding {
            return v;
        }
        let v = self.cover_violation();
        if v.is_some() || property == Saturated {
            return v;
        }
        if property == DimensionPreserving {
            return self.dimension_violation();
        }
        match along {
            Some(targets) => self.coheight_mismatch(targets),
            None => self.coheight_mismatch(&self.cod.minimals()),
        }
    }

    pub fn is_poset_map(&self) -> bool {
        self.violation(MapProperty::Map).is_none()
    }

    pub fn is_poset_embedding(&self) -> bool {
        self.violation(MapProperty::Embedding).is_none()
    }

    pub fn is_saturated_embedding(&self) -> bool {
        self.violation(MapProperty::Saturated).is_none()
    }

    pub fn is_dimension_preserving(&self) -> bool {
        self.violation(MapProperty::DimensionPreserving).is_none()
    }

    /// Saturated embedding such that every `p` in `along` (default: minimal nodes of the
    /// codomain) has a preimage whose up-set has the same dimension as `p`'s.
    pub fn is_coheight_preserving(&self, along: Option<&[NodeId]>) -> bool {
        self.violation_along(MapProperty::Coheight, along).is_none()
    }

    /// Whether the image of a saturated embedding is a saturated subset of the codomain.
    pub fn image_saturated_subset(&self) -> Result<bool> {
        if !self.is_saturated_embedding() {
            return Err(PosetError::PreconditionFailed(
                "map is not a saturated embedding".into(),
            ));
        }
        self.cod.is_saturated_subset(&self.image())
    }

    /// Whether the corestriction onto the image is an order isomorphism.
    pub fn is_isomorphism_onto_image(&self) -> bool {
        if !self.is_injective() {
            return false;
        }
        self.pairs()
            .all(|(x, y)| self.dom.leq(x, y) == self.cod.leq(self.apply(x), self.apply(y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{antichain2, diamond};

    fn chain(labels: &[&str]) -> Poset {
        Poset::chain(labels).unwrap()
    }

    fn v_poset() -> Poset {
        Poset::build(["u1", "u2", "a"], &[("u1", "a"), ("u2", "a")]).unwrap()
    }

    #[test]
    fn poset_map_examples() {
        let d = diamond();
        assert!(PosetMap::identity(&d).is_poset_map());

        let mt = chain(&["m", "t"]);
        let collapse = PosetMap::from_label_pairs(
            d.clone(),
            mt,
            &[("m", "m"), ("a", "m"), ("b", "m"), ("t", "t")],
        )
        .unwrap();
        assert!(collapse.is_poset_map());
        assert!(!collapse.is_poset_embedding());

        let ab = chain(&["a", "b"]);
        let f = PosetMap::from_label_pairs(ab, antichain2(), &[("a", "x"), ("b", "y")]).unwrap();
        assert!(!f.is_poset_map());
        assert_eq!(
            f.violation(MapProperty::Map),
            Some(MapViolation::NotOrderPreserving {
                x: "a".into(),
                y: "b".into()
            })
        );
    }

    #[test]
    fn embedding_examples() {
        let d = diamond();
        assert!(PosetMap::identity(&d).is_poset_embedding());
        let f =
            PosetMap::from_label_pairs(antichain2(), d.clone(), &[("x", "a"), ("y", "b")]).unwrap();
        assert!(f.is_poset_embedding());
        let constant =
            PosetMap::from_label_pairs(antichain2(), d, &[("x", "a"), ("y", "a")]).unwrap();
        assert!(!constant.is_poset_embedding());
        assert!(!constant.is_injective());
    }

    #[test]
    fn saturated_and_dimension_examples() {
        let pqr = chain(&["p", "q", "r"]);
        let skip =
            PosetMap::from_label_pairs(chain(&["a", "b"]), pqr.clone(), &[("a", "p"), ("b", "r")])
                .unwrap();
        assert!(skip.is_poset_embedding());
        assert!(!skip.is_saturated_embedding());
        assert_eq!(
            skip.violation(MapProperty::Saturated),
            Some(MapViolation::CoverNotPreserved {
                x: "a".into(),
                y: "b".into()
            })
        );

        let low =
            PosetMap::from_label_pairs(chain(&["a", "b"]), pqr, &[("a", "p"), ("b", "q")]).unwrap();
        assert!(low.is_saturated_embedding());
        assert!(!low.is_dimension_preserving());

        let d = diamond();
        let id = PosetMap::identity(&d);
        assert!(id.is_saturated_embedding());
        assert!(id.is_dimension_preserving());
        assert!(id.image_saturated_subset().unwrap());

        // Diamond plus a disjoint chain of the same dimension.
        let wide = Poset::build(
            ["m", "a", "b", "t", "c0", "c1", "c2"],
            &[
                ("m", "a"),
                ("m", "b"),
                ("a", "t"),
                ("b", "t"),
                ("c0", "c1"),
                ("c1", "c2"),
            ],
        )
        .unwrap();
        let into_wide = PosetMap::by_label(&d, &wide).unwrap();
        assert!(into_wide.is_dimension_preserving());
    }

    #[test]
    fn coheight_examples() {
        let d = diamond();
        let id = PosetMap::identity(&d);
        assert!(id.is_coheight_preserving(None));
        assert!(id.is_coheight_preserving(Some(&[d.node("m").unwrap()])));

        let v = v_poset();
        let f = PosetMap::from_label_pairs(antichain2(), v, &[("x", "u1"), ("y", "u2")]).unwrap();
        assert!(!f.is_coheight_preserving(None));
    }

    #[test]
    fn image_saturation_requires_saturated_embedding() {
        let skip = PosetMap::from_label_pairs(
            chain(&["a", "b"]),
            chain(&["p", "q", "r"]),
            &[("a", "p"), ("b", "r")],
        )
        .unwrap();
        assert!(matches!(
            skip.image_saturated_subset(),
            Err(PosetError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn label_pairs_must_be_total() {
        let err = PosetMap::from_label_pairs(antichain2(), diamond(), &[("x", "a")]).unwrap_err();
        assert_eq!(
            err,
            PosetError::NonTotalMap {
                expected: 2,
                got: 1
            }
        );
        let err = PosetMap::from_label_pairs(antichain2(), diamond(), &[("x", "a"), ("x", "b")])
            .unwrap_err();
        assert_eq!(err, PosetError::DuplicateAssignment("x".into()));
    }
}
