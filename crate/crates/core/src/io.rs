//! JSON graph files.
//!
//! ```json
//! {"vertices": [[0, 2, 4], [5, 3, 1]], "marked_faces": [0, 1, 2]}
//! ```
//!
//! Each inner array lists the darts leaving one vertex in counterclockwise
//! order. Darts `2e` and `2e + 1` are the two ends of edge `e`. Face indices
//! refer to faces ordered by their smallest dart. An optional `layout` holds
//! drawing coordinates (see [`Layout`]).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combmap::{CombinatorialMap, FaceId, MapError};
use crate::exploration::{ExplorationError, SigmaGraph};
use crate::render::Layout;

#[derive(Debug, Error)]
pub enum GraphIoError {
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Exploration(#[from] ExplorationError),
    #[error("MissingMarkedFaces: graph file has no marked_faces")]
    MissingMarkedFaces,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_faces: Option<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<Layout>,
}

impl GraphFile {
    pub fn from_map(map: &CombinatorialMap) -> GraphFile {
        GraphFile { vertices: map.to_rotation_lists(), marked_faces: None, layout: None }
    }

    pub fn from_graph(g: &SigmaGraph) -> GraphFile {
        GraphFile {
            vertices: g.map().to_rotation_lists(),
            marked_faces: Some(g.marked_faces().map(|f| f.0)),
            layout: None,
        }
    }

    pub fn with_layout(mut self, layout: Layout) -> GraphFile {
        self.layout = Some(layout);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph file serializes")
    }

    pub fn to_map(&self) -> Result<CombinatorialMap, GraphIoError> {
        Ok(CombinatorialMap::from_rotations(self.vertices.clone())?)
    }

    pub fn to_graph(&self) -> Result<SigmaGraph, GraphIoError> {
        let marked = self.marked_faces.ok_or(GraphIoError::MissingMarkedFaces)?;
        Ok(SigmaGraph::new(self.to_map()?, marked.map(FaceId))?)
    }
}

pub fn parse_graph(json: &str) -> Result<SigmaGraph, GraphIoError> {
    serde_json::from_str::<GraphFile>(json)?.to_graph()
}

pub fn graph_to_json(g: &SigmaGraph) -> String {
    GraphFile::from_graph(g).to_json()
}

pub fn read_graph_file(path: &Path) -> Result<GraphFile, GraphIoError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn read_graph(path: &Path) -> Result<SigmaGraph, GraphIoError> {
    read_graph_file(path)?.to_graph()
}

pub fn write_graph(path: &Path, g: &SigmaGraph) -> Result<(), GraphIoError> {
    fs::write(path, graph_to_json(g) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::special_loops::sigma_of;

    #[test]
    fn theta_round_trips() {
        let g = corpus::theta();
        let json = graph_to_json(&g);
        assert_eq!(json, r#"{"vertices":[[0,2,4],[5,3,1]],"marked_faces":[0,1,2]}"#);
        let back = parse_graph(&json).unwrap();
        assert_eq!(back.map().to_rotation_lists(), g.map().to_rotation_lists());
        assert_eq!(back.marked_faces(), g.marked_faces());
    }

    #[test]
    fn corpus_round_trips_preserve_sigma() {
        for (name, g) in corpus::named() {
            let back = parse_graph(&graph_to_json(&g)).unwrap();
            assert_eq!(sigma_of(&back), sigma_of(&g), "{name}");
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(matches!(parse_graph("{"), Err(GraphIoError::Json(_))));
        assert!(matches!(
            parse_graph(r#"{"vertices":[[0,2,4],[5,3,1]]}"#),
            Err(GraphIoError::MissingMarkedFaces)
        ));
        let dup = parse_graph(r#"{"vertices":[[0,2,4],[5,3,1]],"marked_faces":[0,1,1]}"#).unwrap_err();
        assert!(dup.to_string().starts_with("DuplicateMarkedFace"), "{dup}");
        assert!(matches!(
            parse_graph(r#"{"vertices":[[0,2],[5,3,1]],"marked_faces":[0,1,2]}"#),
            Err(GraphIoError::Map(_))
        ));
    }

    #[test]
    fn layout_survives_a_round_trip() {
        let fam = corpus::three_circles_spec().build().unwrap();
        let f = GraphFile::from_graph(&fam.graph).with_layout(fam.arrangement.drawing());
        let back: GraphFile = serde_json::from_str(&f.to_json()).unwrap();
        let layout = back.layout.unwrap();
        assert!(layout.fits(fam.graph.map()));
        assert_eq!(layout.outer, f.layout.unwrap().outer);
    }

    #[test]
    fn map_only_file_omits_marks() {
        let f = GraphFile::from_map(&corpus::triangle());
        let json = serde_json::to_string(&f).unwrap();
        assert!(!json.contains("marked_faces"));
        assert_eq!(serde_json::from_str::<GraphFile>(&json).unwrap(), f);
    }
}
