//! Locating green-black cycles in a colored multigraph and reading the
//! star groups around them.
//!
//! A star center is an off-cycle node whose three edges are black; it is a
//! `d`-star when `d` of its neighbors lie on the cycle.

use super::{Artifact, ArtifactOrigin, CycleConfig, StarGroup};
use crate::graph::VertexId;
use crate::multigraph::{ColoredMultigraph, EdgeColor};
use crate::path_score::{find_max_paths, GreenBlackPath, PathScoreError};
use std::collections::BTreeMap;

/// All alternating green-black cycles of `m`.
pub fn find_cycles(m: &ColoredMultigraph) -> Result<Vec<GreenBlackPath>, PathScoreError> {
    Ok(find_max_paths(m)?.cycles)
}

struct Stars<'a> {
    m: &'a ColoredMultigraph,
    position: BTreeMap<VertexId, usize>,
}

impl Stars<'_> {
    /// Neighbors of a star center, or `None` if `x` is not one.
    fn center(&self, x: VertexId) -> Option<Vec<VertexId>> {
        if self.position.contains_key(&x) || !self.m.is_node(x) {
            return None;
        }
        let inc = self.m.incident(x);
        if inc.len() != 3 {
            return None;
        }
        let mut out = Vec::with_capacity(3);
        for &e in inc {
            let edge = self.m.edge(e);
            if edge.color != EdgeColor::Black || edge.is_loop() {
                return None;
            }
            out.push(edge.other(x));
        }
        Some(out)
    }

    /// Sorted cycle positions and off-cycle neighbors of a star center.
    fn split(&self, x: VertexId) -> Option<(Vec<usize>, Vec<VertexId>)> {
        let nb = self.center(x)?;
        let mut on: Vec<usize> = nb.iter().filter_map(|y| self.position.get(y).copied()).collect();
        on.sort_unstable();
        let off = nb.into_iter().filter(|y| !self.position.contains_key(y)).collect();
        Some((on, off))
    }
}

/// Star groups around `cycle`, each reported once and in node order.
pub fn star_groups(m: &ColoredMultigraph, cycle: &GreenBlackPath) -> CycleConfig {
    let stars = Stars {
        m,
        position: cycle.nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect(),
    };
    let mut groups = Vec::new();
    for &x in &m.nodes {
        let Some((on, off)) = stars.split(x) else { continue };
        match on.len() {
            3 => groups.push(StarGroup {
                origin: ArtifactOrigin::Isolated3Star,
                anchors: on,
            }),
            2 => {
                let t = off[0];
                let Some((t_on, t_off)) = stars.split(t) else { continue };
                match t_on.len() {
                    2 if x < t => groups.push(StarGroup {
                        origin: ArtifactOrigin::Adjacent2Stars,
                        anchors: [on, t_on].concat(),
                    }),
                    1 => {
                        let w = t_off.iter().copied().find(|&w| w != x);
                        match w.and_then(|w| Some((w, stars.split(w)?))) {
                            Some((w, (w_on, _))) if w_on.len() == 2 => {
                                if x < w {
                                    groups.push(StarGroup {
                                        origin: ArtifactOrigin::TwoOneTwo,
                                        anchors: [on, t_on, w_on].concat(),
                                    });
                                }
                            }
                            _ => groups.push(StarGroup {
                                origin: ArtifactOrigin::TwoOneNotTwo,
                                anchors: [on, t_on].concat(),
                            }),
                        }
                    }
                    _ => {}
                }
            }
            _ => {}
        }
    }
    debug_assert!(groups.iter().all(|g| g.anchors.len() == g.origin.anchor_count()));
    CycleConfig { k: cycle.k(), groups }
}

/// Links and fibers contributed by the stars around `cycle`.
pub fn attach_artifacts(m: &ColoredMultigraph, cycle: &GreenBlackPath) -> Vec<Artifact> {
    star_groups(m, cycle).artifacts()
}
