use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WorldError;

/// Book edge facing the robot. Quarter turns advance through the variants
/// in declaration order, wrapping from `Top` back to `Bottom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Bottom,
    Binding,
    Open,
    Top,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [
        Orientation::Bottom,
        Orientation::Binding,
        Orientation::Open,
        Orientation::Top,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i % 4]
    }

    pub fn rotated(self, quarter_turns: i32) -> Self {
        Self::from_index((self.index() as i32 + quarter_turns).rem_euclid(4) as usize)
    }

    /// Upside-down flip: bottom <-> top, binding <-> open.
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Bottom => Orientation::Top,
            Orientation::Top => Orientation::Bottom,
            Orientation::Binding => Orientation::Open,
            Orientation::Open => Orientation::Binding,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Bottom => "bottom",
            Orientation::Binding => "binding",
            Orientation::Open => "open",
            Orientation::Top => "top",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Orientation {
    type Err = WorldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| WorldError::InvalidState(format!("unknown orientation `{s}`")))
    }
}

/// Hidden simulated environment state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WorldState {
    pub orientation: Orientation,
    pub grasped: bool,
    pub box_open: bool,
    pub object_in_box: bool,
}

impl Default for WorldState {
    fn default() -> Self {
        WorldState {
            orientation: Orientation::Bottom,
            grasped: false,
            box_open: false,
            object_in_box: false,
        }
    }
}

impl WorldState {
    /// Applies `key=value` overrides, comma separated, e.g.
    /// `orientation=open,grasped=true`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, WorldError> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| WorldError::InvalidState(format!("expected key=value, got `{part}`")))?;
            let flag = || {
                value
                    .parse::<bool>()
                    .map_err(|_| WorldError::InvalidState(format!("`{key}` expects true/false")))
            };
            match key.trim() {
                "orientation" => self.orientation = value.trim().parse()?,
                "grasped" => self.grasped = flag()?,
                "box_open" => self.box_open = flag()?,
                "object_in_box" => self.object_in_box = flag()?,
                other => {
                    return Err(WorldError::InvalidState(format!("unknown world field `{other}`")))
                }
            }
        }
        Ok(self)
    }
}

/// Partial assignment over [`WorldState`] fields. Used both as a
/// precondition (every set field must match) and as an effect (every set
/// field is written).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatePattern {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grasped: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_open: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_in_box: Option<bool>,
}

impl StatePattern {
    pub fn matches(&self, w: &WorldState) -> bool {
        self.orientation.is_none_or(|o| o == w.orientation)
            && self.grasped.is_none_or(|g| g == w.grasped)
            && self.box_open.is_none_or(|b| b == w.box_open)
            && self.object_in_box.is_none_or(|b| b == w.object_in_box)
    }

    pub fn apply(&self, w: &WorldState) -> WorldState {
        WorldState {
            orientation: self.orientation.unwrap_or(w.orientation),
            grasped: self.grasped.unwrap_or(w.grasped),
            box_open: self.box_open.unwrap_or(w.box_open),
            object_in_box: self.object_in_box.unwrap_or(w.object_in_box),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_form_a_cyclic_group() {
        for o in Orientation::ALL {
            assert_eq!(o.rotated(1).rotated(3), o);
            assert_eq!(o.rotated(1).rotated(1).rotated(1).rotated(1), o);
            assert_eq!(o.flipped().flipped(), o);
        }
        assert_eq!(Orientation::Bottom.rotated(1), Orientation::Binding);
        assert_eq!(Orientation::Top.rotated(1), Orientation::Bottom);
    }

    #[test]
    fn overrides_parse() {
        let w = WorldState::default()
            .with_overrides("orientation=open, grasped=true")
            .unwrap();
        assert_eq!(w.orientation, Orientation::Open);
        assert!(w.grasped);
        assert!(WorldState::default().with_overrides("colour=red").is_err());
        assert!(WorldState::default().with_overrides("orientation=sideways").is_err());
    }
}
