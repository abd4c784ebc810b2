use std::fmt;
use std::str::FromStr;

use super::{Position, Sequent, Structure};

/// One step into a structure: the child index and whether that child sits on
/// the opposite side of its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub child: usize,
    pub flip: bool,
}

/// Address of a substructure, relative to some root structure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path {
    pub steps: Vec<Step>,
}

impl Path {
    pub fn root() -> Path {
        Path::default()
    }

    /// Build a path from child indices, computing flips against `root`.
    pub fn from_indices(root: &Structure, indices: &[usize]) -> Option<Path> {
        let mut steps = Vec::with_capacity(indices.len());
        let mut cur = root;
        for &child in indices {
            let Structure::App(con, args) = cur else {
                return None;
            };
            let next = args.get(child)?;
            steps.push(Step {
                child,
                flip: con.flips()[child],
            });
            cur = next;
        }
        Some(Path { steps })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.child).collect()
    }

    pub fn resolve<'a>(&self, root: &'a Structure) -> Option<&'a Structure> {
        let mut cur = root;
        for step in &self.steps {
            cur = cur.args().get(step.child)?;
        }
        Some(cur)
    }

    /// Position of the addressed node when the root sits at `root_pos`.
    pub fn position(&self, root_pos: Position) -> Position {
        let flips = self.steps.iter().filter(|s| s.flip).count();
        root_pos.flip_if(flips % 2 == 1)
    }

    pub fn child(&self, step: Step) -> Path {
        let mut steps = self.steps.clone();
        steps.push(step);
        Path { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.steps.iter().map(|s| s.child.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Which side of a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Ant,
    Suc,
}

impl Side {
    pub fn position(self) -> Position {
        match self {
            Side::Ant => Position::Ant,
            Side::Suc => Position::Suc,
        }
    }
}

/// Address of a substructure within a sequent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqPath {
    pub side: Side,
    pub path: Path,
}

impl SeqPath {
    pub fn resolve<'a>(&self, s: &'a Sequent) -> Option<&'a Structure> {
        self.path.resolve(s.side(self.side))
    }

    pub fn position(&self) -> Position {
        self.path.position(self.side.position())
    }

    /// Parse `ant`, `suc.1`, `ant.0.1`, checking flips against `s`.
    pub fn parse(text: &str, s: &Sequent) -> Option<SeqPath> {
        let mut parts = text.trim().split('.');
        let side = match parts.next()? {
            "ant" => Side::Ant,
            "suc" => Side::Suc,
            _ => return None,
        };
        let indices: Vec<usize> = parts.map(usize::from_str).collect::<Result<_, _>>().ok()?;
        let path = Path::from_indices(s.side(side), &indices)?;
        Some(SeqPath { side, path })
    }

    /// Every substructure address of a sequent, antecedent first.
    pub fn all(s: &Sequent) -> Vec<SeqPath> {
        let mut out = Vec::new();
        for side in [Side::Ant, Side::Suc] {
            for sub in substructures(s.side(side), side.position()) {
                out.push(SeqPath {
                    side,
                    path: sub.path,
                });
            }
        }
        out
    }
}

impl fmt::Display for SeqPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Ant => "ant",
            Side::Suc => "suc",
        };
        f.write_str(side)?;
        for s in &self.path.steps {
            write!(f, ".{}", s.child)?;
        }
        Ok(())
    }
}

/// An enumerated substructure with its computed position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substructure {
    pub path: Path,
    pub structure: Structure,
    pub position: Position,
}

/// Enumerate every structural node in pre-order, root first. Operational
/// leaves are listed but not entered.
pub fn substructures(s: &Structure, root_pos: Position) -> Vec<Substructure> {
    fn go(s: &Structure, path: Path, pos: Position, out: &mut Vec<Substructure>) {
        out.push(Substructure {
            path: path.clone(),
            structure: s.clone(),
            position: pos,
        });
        if let Structure::App(con, args) = s {
            for (child, (arg, &flip)) in args.iter().zip(con.flips()).enumerate() {
                go(
                    arg,
                    path.child(Step { child, flip }),
                    pos.flip_if(flip),
                    out,
                );
            }
        }
    }
    let mut out = Vec::new();
    go(s, Path::root(), root_pos, &mut out);
    out
}
