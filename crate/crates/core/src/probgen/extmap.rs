use super::lattice::StableLattice;
use crate::error::{Error, Result};
use crate::extensions::{complement_exists, extensions_isomorphic, ExtensionRecord, IsoVerdict, KernelShape};
use crate::groups::{min_generators, quotient, GroupHom, SimpleGroup, Subgroup};

/// The extension `1 → R/M → H/M → G → 1` of one maximal node `M`.
#[derive(Clone, Debug)]
pub struct StableExtension {
    pub node: Subgroup,
    pub record: ExtensionRecord,
    /// Index of the isomorphism class of `record` among all nodes.
    pub bucket: usize,
}

/// Maximal nodes grouped by the isomorphism class of their extension.
#[derive(Clone, Debug)]
pub struct ExtensionMap {
    /// `d(H)`.
    pub d: usize,
    pub extensions: Vec<StableExtension>,
    /// Size and `[R:M]` of each bucket.
    pub buckets: Vec<(usize, usize)>,
}

impl ExtensionMap {
    /// Every bucket has at most `[R:M]^d` members.
    pub fn multiplicity_holds(&self) -> bool {
        self.buckets
            .iter()
            .all(|&(size, index)| (size as u128) <= (index as u128).pow(self.d as u32))
    }
}

fn kernel_shape(record_kernel: &Subgroup) -> KernelShape {
    let e = record_kernel.parent();
    let order = record_kernel.order();
    let elems = record_kernel.elements();
    let abelian = elems.iter().all(|&a| elems.iter().all(|&b| e.mul(a, b) == e.mul(b, a)));
    if abelian {
        let p = (2..=order).find(|d| order % d == 0).unwrap_or(1);
        let mut k = 0;
        let mut m = order;
        while m % p == 0 && m > 1 {
            m /= p;
            k += 1;
        }
        return KernelShape::Abelian { p: p as u32, k };
    }
    for s in SimpleGroup::ALL {
        for k in 1..=4usize {
            if s.order().checked_pow(k as u32) == Some(order) {
                return KernelShape::NonAbelian {
                    simple: s.name().to_string(),
                    simple_order: s.order(),
                    k,
                };
            }
        }
    }
    KernelShape::Other
}

pub fn stable_to_extension_map(lattice: &StableLattice) -> Result<ExtensionMap> {
    let h = lattice.domain();
    let g = lattice.codomain();
    let f = &lattice.surjection;
    let (d, _) = min_generators(h)?;
    let mut extensions: Vec<StableExtension> = Vec::new();
    let mut buckets: Vec<(usize, usize)> = Vec::new();
    for m in lattice.maximal() {
        let (q, pi) = quotient(h, m)?;
        let mut images = vec![usize::MAX; q.order()];
        for x in h.elements() {
            images[pi.apply(x)] = f.apply(x);
        }
        let proj = GroupHom::from_images(&q, g, images)?;
        let shape = kernel_shape(&proj.kernel());
        let split = complement_exists(&q, &proj)?;
        let record = ExtensionRecord::new(g, proj, shape, true, split)?;
        let mut bucket = None;
        for (b, &(_, index)) in buckets.iter().enumerate() {
            if index != record.degree {
                continue;
            }
            let rep = extensions.iter().find(|x| x.bucket == b).expect("bucket representative");
            match extensions_isomorphic(&rep.record, &record)? {
                IsoVerdict::Isomorphic => {
                    bucket = Some(b);
                    break;
                }
                IsoVerdict::NotIsomorphic => {}
                IsoVerdict::Undecided => {
                    return Err(Error::Precondition("extension isomorphism undecided".into()));
                }
            }
        }
        let b = bucket.unwrap_or_else(|| {
            buckets.push((0, record.degree));
            buckets.len() - 1
        });
        buckets[b].0 += 1;
        extensions.push(StableExtension {
            node: m.clone(),
            record,
            bucket: b,
        });
    }
    Ok(ExtensionMap { d, extensions, buckets })
}
