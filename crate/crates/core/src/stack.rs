//! Layer sequences between two air half-spaces.

use crate::error::{Result, TmmError};
use crate::media::MaterialParams;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer<T: Scalar> {
    material: MaterialParams<T>,
    thickness: T,
}

impl<T: Scalar> Layer<T> {
    pub fn new(material: MaterialParams<T>, thickness: T) -> Result<Self> {
        if !(thickness > T::zero() && thickness.is_finite()) {
            return Err(TmmError::InvalidThickness(thickness.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { material, thickness })
    }

    pub fn material(&self) -> &MaterialParams<T> {
        &self.material
    }

    /// Thickness in metres.
    pub fn thickness(&self) -> T {
        self.thickness
    }

    pub fn with_material(self, material: MaterialParams<T>) -> Self {
        Self { material, ..self }
    }
}

/// Two-material periodic pattern `A (B A)^periods`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Periodic<T: Scalar> {
    pub a: Layer<T>,
    pub b: Layer<T>,
    /// Number of full `B A` periods following the first `A` slab.
    pub periods: usize,
}

/// Ordered slabs, first slab adjacent to the incidence side.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack<T: Scalar> {
    layers: Vec<Layer<T>>,
    periodic: Option<Periodic<T>>,
}

impl<T: Scalar> Stack<T> {
    /// Air on both sides with nothing in between.
    pub fn air() -> Self {
        Self {
            layers: Vec::new(),
            periodic: None,
        }
    }

    /// Arbitrary slab sequence. An empty sequence is the trivial air stack.
    pub fn new(layers: Vec<Layer<T>>) -> Self {
        Self { layers, periodic: None }
    }

    /// `A B A B ... A` with `slab_count` slabs; `slab_count` must be odd.
    pub fn periodic(a: Layer<T>, b: Layer<T>, slab_count: usize) -> Result<Self> {
        if slab_count.is_multiple_of(2) {
            return Err(TmmError::EvenSlabCount(slab_count));
        }
        let layers = (0..slab_count).map(|i| if i % 2 == 0 { a } else { b }).collect();
        Ok(Self {
            layers,
            periodic: Some(Periodic {
                a,
                b,
                periods: slab_count / 2,
            }),
        })
    }

    pub fn layers(&self) -> &[Layer<T>] {
        &self.layers
    }

    pub fn periodic_form(&self) -> Option<&Periodic<T>> {
        self.periodic.as_ref()
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn total_thickness(&self) -> T {
        self.layers.iter().fold(T::zero(), |acc, l| acc + l.thickness)
    }

    pub fn is_lossless(&self) -> bool {
        self.layers.iter().all(|l| l.material.is_lossless())
    }

    /// Same stack with the slab order reversed. The periodic form is
    /// symmetric, so it is kept.
    pub fn reversed(&self) -> Self {
        let mut layers = self.layers.clone();
        layers.reverse();
        Self {
            layers,
            periodic: self.periodic,
        }
    }

    /// Drops the periodic form, forcing the general cascade.
    pub fn into_general(self) -> Self {
        Self { periodic: None, ..self }
    }

    /// Applies `f` to every material, preserving the periodic structure.
    pub fn map_materials(&self, f: impl Fn(&MaterialParams<T>) -> MaterialParams<T>) -> Self {
        let map_layer = |l: &Layer<T>| l.with_material(f(&l.material));
        Self {
            layers: self.layers.iter().map(map_layer).collect(),
            periodic: self.periodic.map(|p| Periodic {
                a: map_layer(&p.a),
                b: map_layer(&p.b),
                periods: p.periods,
            }),
        }
    }
}
