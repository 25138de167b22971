use std::sync::Arc;

use super::group::GroupRef;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

const EXHAUSTIVE_HOM: usize = 200;

/// A verified homomorphism stored as its full image table.
#[derive(Clone)]
pub struct GroupHom {
    dom: GroupRef,
    cod: GroupRef,
    images: Arc<Vec<usize>>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom({} -> {})", self.dom.label(), self.cod.label())
    }
}

impl GroupHom {
    pub fn from_images(dom: &GroupRef, cod: &GroupRef, images: Vec<usize>) -> Result<Self> {
        if images.len() != dom.order() || images.iter().any(|&y| y >= cod.order()) {
            return Err(Error::NotHomomorphism("image table has the wrong shape".into()));
        }
        if dom.order() <= EXHAUSTIVE_HOM {
            for a in dom.elements() {
                for b in dom.elements() {
                    if images[dom.mul(a, b)] != cod.mul(images[a], images[b]) {
                        return Err(Error::NotHomomorphism(format!("fails on the pair ({a}, {b})")));
                    }
                }
            }
        } else {
            let gen_images: Vec<usize> = dom.gens().iter().map(|&s| images[s]).collect();
            check_edges(dom, cod, dom.gens(), &gen_images, &images)?;
        }
        Ok(GroupHom {
            dom: dom.clone(),
            cod: cod.clone(),
            images: Arc::new(images),
        })
    }

    /// Extends `gens[i] -> gen_images[i]` to the whole domain and verifies it.
    pub fn extend(dom: &GroupRef, gens: &[usize], gen_images: &[usize], cod: &GroupRef) -> Result<Self> {
        if gens.len() != gen_images.len() {
            return Err(Error::NotHomomorphism("generator and image lists differ in length".into()));
        }
        if gen_images.iter().any(|&y| y >= cod.order()) {
            return Err(Error::NotHomomorphism("generator image out of range".into()));
        }
        let tree = dom
            .schreier_tree(gens)
            .ok_or_else(|| Error::invalid("proposed generators do not generate the domain"))?;
        let mut images = vec![usize::MAX; dom.order()];
        images[dom.identity()] = cod.identity();
        for &x in &tree.order[1..] {
            images[x] = cod.mul(images[tree.parent[x]], gen_images[tree.gen[x]]);
        }
        check_edges(dom, cod, gens, gen_images, &images)?;
        Ok(GroupHom {
            dom: dom.clone(),
            cod: cod.clone(),
            images: Arc::new(images),
        })
    }

    /// Extends generator images without raising: `None` if not a homomorphism.
    pub fn try_extend(dom: &GroupRef, gens: &[usize], gen_images: &[usize], cod: &GroupRef) -> Option<Self> {
        Self::extend(dom, gens, gen_images, cod).ok()
    }

    pub fn identity(g: &GroupRef) -> Self {
        GroupHom {
            dom: g.clone(),
            cod: g.clone(),
            images: Arc::new(g.elements().collect()),
        }
    }

    pub fn trivial(dom: &GroupRef, cod: &GroupRef) -> Self {
        GroupHom {
            dom: dom.clone(),
            cod: cod.clone(),
            images: Arc::new(vec![cod.identity(); dom.order()]),
        }
    }

    pub fn domain(&self) -> &GroupRef {
        &self.dom
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn kernel(&self) -> Subgroup {
        let id = self.cod.identity();
        let elems = self.dom.elements().filter(|&x| self.images[x] == id).collect();
        Subgroup::from_sorted_unchecked(&self.dom, elems)
    }

    pub fn image(&self) -> Subgroup {
        let mut e: Vec<usize> = self.images.to_vec();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted_unchecked(&self.cod, e)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.cod.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(&self.cod, &other.dom) {
            return Err(Error::DimensionMismatch("composable homomorphisms need matching groups".into()));
        }
        Ok(GroupHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            images: Arc::new(self.images.iter().map(|&y| other.images[y]).collect()),
        })
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.cod.order()];
        for x in self.dom.elements() {
            inv[self.images[x]] = x;
        }
        Some(GroupHom {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            images: Arc::new(inv),
        })
    }

    /// Image of a subgroup of the domain.
    pub fn map_subgroup(&self, s: &Subgroup) -> Subgroup {
        let mut e: Vec<usize> = s.elements().iter().map(|&x| self.images[x]).collect();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted_unchecked(&self.cod, e)
    }

    /// Full preimage of a subgroup of the codomain.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let elems = self.dom.elements().filter(|&x| s.contains(self.images[x])).collect();
        Subgroup::from_sorted_unchecked(&self.dom, elems)
    }
}

fn check_edges(dom: &GroupRef, cod: &GroupRef, gens: &[usize], gen_images: &[usize], images: &[usize]) -> Result<()> {
    if gen_images.iter().any(|&y| y >= cod.order()) {
        return Err(Error::NotHomomorphism("generator image out of range".into()));
    }
    for x in dom.elements() {
        for (&s, &t) in gens.iter().zip(gen_images) {
            if images[dom.mul(x, s)] != cod.mul(images[x], t) {
                return Err(Error::NotHomomorphism(format!("fails on ({x}, generator {s})")));
            }
        }
    }
    Ok(())
}
