use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with a total composition table on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // compose[g][f] = g ∘ f when target(f) == source(g)
    compose: Vec<Vec<Option<usize>>>,
}

impl SmallCategory {
    /// Builds a category from composition triples `(g, f, g∘f)` and checks the axioms.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        triples: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        if identities.len() != objects.len() {
            return Err(Error::Category("one identity per object required".into()));
        }
        for (o, &id) in identities.iter().enumerate() {
            let mor = morphisms
                .get(id)
                .ok_or_else(|| Error::Category(format!("identity of {} is not a morphism", objects[o])))?;
            if mor.source != o || mor.target != o {
                return Err(Error::Category(format!("{} is not an endomorphism of {}", mor.name, objects[o])));
            }
        }
        for mor in &morphisms {
            if mor.source >= objects.len() || mor.target >= objects.len() {
                return Err(Error::Category(format!("{} has an unknown endpoint", mor.name)));
            }
        }
        let mut compose = vec![vec![None; m]; m];
        for &(g, f, h) in triples {
            if g >= m || f >= m || h >= m {
                return Err(Error::Category(format!("triple ({g}, {f}, {h}) out of range")));
            }
            let (mg, mf, mh) = (&morphisms[g], &morphisms[f], &morphisms[h]);
            if mf.target != mg.source || mh.source != mf.source || mh.target != mg.target {
                return Err(Error::Category(format!(
                    "{} ∘ {} = {} has inconsistent endpoints",
                    mg.name, mf.name, mh.name
                )));
            }
            if let Some(prev) = compose[g][f] {
                if prev != h {
                    return Err(Error::Category(format!("{} ∘ {} defined twice", mg.name, mf.name)));
                }
            }
            compose[g][f] = Some(h);
        }
        // identities compose trivially even when not listed
        for f in 0..m {
            let (s, t) = (morphisms[f].source, morphisms[f].target);
            for (g, ff) in [(identities[t], f), (f, identities[s])] {
                match compose[g][ff] {
                    None => compose[g][ff] = Some(f),
                    Some(h) if h != f => {
                        return Err(Error::Category(format!(
                            "unit law fails: {} ∘ {} = {}",
                            morphisms[g].name, morphisms[ff].name, morphisms[h].name
                        )))
                    }
                    _ => {}
                }
            }
        }
        let cat = SmallCategory { objects, morphisms, identities, compose };
        cat.check()?;
        Ok(cat)
    }

    fn check(&self) -> Result<()> {
        let m = self.morphisms.len();
        for g in 0..m {
            for f in 0..m {
                if self.morphisms[f].target == self.morphisms[g].source && self.compose[g][f].is_none() {
                    return Err(Error::Category(format!(
                        "composition table missing {} ∘ {}",
                        self.morphisms[g].name, self.morphisms[f].name
                    )));
                }
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = self.compose[h][g] else { continue };
                for f in 0..m {
                    let Some(gf) = self.compose[g][f] else { continue };
                    let a = self.compose[hg][f];
                    let b = self.compose[h][gf];
                    if a != b {
                        return Err(Error::Category(format!(
                            "associativity fails on the triple ({}, {}, {})",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        SmallCategory::new(
            vec!["*".into()],
            vec![Morphism { name: "id".into(), source: 0, target: 0 }],
            vec![0],
            &[],
        )
        .expect("terminal category")
    }

    /// The cyclic group of order `n` as a one-object category; morphism `k` is `g^k`.
    pub fn cyclic_group(n: usize) -> Self {
        let morphisms = (0..n)
            .map(|k| Morphism { name: if k == 0 { "e".into() } else { format!("g{k}") }, source: 0, target: 0 })
            .collect();
        let mut triples = Vec::new();
        for a in 0..n {
            for b in 0..n {
                triples.push((a, b, (a + b) % n));
            }
        }
        SmallCategory::new(vec!["*".into()], morphisms, vec![0], &triples).expect("cyclic group")
    }

    /// The arrow category `0 -> 1`.
    pub fn arrow() -> Self {
        SmallCategory::new(
            vec!["0".into(), "1".into()],
            vec![
                Morphism { name: "id0".into(), source: 0, target: 0 },
                Morphism { name: "id1".into(), source: 1, target: 1 },
                Morphism { name: "a".into(), source: 0, target: 1 },
            ],
            vec![0, 1],
            &[],
        )
        .expect("arrow category")
    }

    /// The chaotic groupoid on `n` objects (exactly one morphism between any two).
    pub fn chaotic(n: usize) -> Self {
        let mut morphisms = Vec::new();
        for s in 0..n {
            for t in 0..n {
                morphisms.push(Morphism { name: format!("{s}{t}"), source: s, target: t });
            }
        }
        let idx = |s: usize, t: usize| s * n + t;
        let mut triples = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    triples.push((idx(b, c), idx(a, b), idx(a, c)));
                }
            }
        }
        let identities = (0..n).map(|o| idx(o, o)).collect();
        SmallCategory::new((0..n).map(|o| o.to_string()).collect(), morphisms, identities, &triples)
            .expect("chaotic groupoid")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Morphisms `s -> t`.
    pub fn hom(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == s && self.morphisms[f].target == t)
            .collect()
    }

    /// Every morphism is invertible.
    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| {
            let Morphism { source, target, .. } = self.morphisms[f];
            self.hom(target, source)
                .into_iter()
                .any(|g| self.compose[g][f] == Some(self.identities[source]))
        })
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// The opposite category.
    pub fn opposite(&self) -> SmallCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), source: m.target, target: m.source })
            .collect();
        let m = self.morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for g in 0..m {
            for f in 0..m {
                compose[f][g] = self.compose[g][f];
            }
        }
        SmallCategory { objects: self.objects.clone(), morphisms, identities: self.identities.clone(), compose }
    }

    /// Composition triples `(g, f, g∘f)` for export.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose[g][f] {
                    out.push((g, f, h));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert!(SmallCategory::cyclic_group(2).is_groupoid());
        assert!(!SmallCategory::arrow().is_groupoid());
        assert!(SmallCategory::chaotic(3).is_groupoid());
        assert_eq!(SmallCategory::arrow().opposite().hom(1, 0).len(), 1);
    }

    #[test]
    fn broken_associativity_is_named() {
        // (x∘y)∘x = y but x∘(y∘x) = x
        let mors = ["e", "x", "y"]
            .iter()
            .map(|n| Morphism { name: n.to_string(), source: 0, target: 0 })
            .collect();
        let t = [(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 2)];
        let err = SmallCategory::new(vec!["*".into()], mors, vec![0], &t).unwrap_err();
        assert!(matches!(err, Error::Category(ref s) if s.contains("associativity")), "{err}");
    }
}
