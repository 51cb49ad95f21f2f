use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boolfn::BoolFn;

/// The function classes counted by the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    All,
    Balanced,
    Monotone,
    BalancedMonotone,
    Unate,
    BalancedUnate,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::All,
        Property::Balanced,
        Property::Monotone,
        Property::BalancedMonotone,
        Property::Unate,
        Property::BalancedUnate,
    ];

    pub fn holds(&self, f: &BoolFn) -> bool {
        match self {
            Property::All => true,
            Property::Balanced => f.is_balanced_or_false(),
            Property::Monotone => f.is_monotone(),
            Property::BalancedMonotone => f.is_balanced_or_false() && f.is_monotone(),
            Property::Unate => f.is_unate(),
            Property::BalancedUnate => f.is_balanced_or_false() && f.is_unate(),
        }
    }

    pub fn is_balanced(&self) -> bool {
        matches!(self, Property::Balanced | Property::BalancedMonotone | Property::BalancedUnate)
    }

    /// The balanced refinement of this property.
    pub fn balanced(&self) -> Property {
        match self {
            Property::All | Property::Balanced => Property::Balanced,
            Property::Monotone | Property::BalancedMonotone => Property::BalancedMonotone,
            Property::Unate | Property::BalancedUnate => Property::BalancedUnate,
        }
    }

    /// Short symbol: `A`, `B`, `M`, `BM`, `U`, `BU`.
    pub fn symbol(&self) -> &'static str {
        match self {
            Property::All => "A",
            Property::Balanced => "B",
            Property::Monotone => "M",
            Property::BalancedMonotone => "BM",
            Property::Unate => "U",
            Property::BalancedUnate => "BU",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Property::All => "all",
            Property::Balanced => "balanced",
            Property::Monotone => "monotone",
            Property::BalancedMonotone => "balanced-monotone",
            Property::Unate => "unate",
            Property::BalancedUnate => "balanced-unate",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s || p.symbol() == s)
            .ok_or_else(|| format!("unknown function class {s:?}"))
    }
}
