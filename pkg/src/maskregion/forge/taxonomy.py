"""Part-level attribute taxonomy: 55 attributes over 4 groups
(29 colors, 10 patterns & markings, 13 materials, 3 levels of reflectance)."""

COLORS = frozenset({
    "black", "white",
    "light blue", "blue", "dark blue",
    "light brown", "brown", "dark brown",
    "light green", "green", "dark green",
    "light grey", "grey", "dark grey",
    "light orange", "orange", "dark orange",
    "light pink", "pink", "dark pink",
    "light purple", "purple", "dark purple",
    "light red", "red", "dark red",
    "light yellow", "yellow", "dark yellow",
})

PATTERNS_MARKINGS = frozenset({
    "plain", "striped", "dotted", "checkered", "woodgrain",
    "floral", "perforated", "studded", "logo", "text",
})

MATERIALS = frozenset({
    "stone", "wood", "rattan", "fabric", "crochet", "wool", "leather",
    "velvet", "metal", "paper", "plastic", "glass", "ceramic",
})

REFLECTANCE = frozenset({"opaque", "translucent", "transparent"})

ALL_ATTRIBUTES = COLORS | PATTERNS_MARKINGS | MATERIALS | REFLECTANCE

ATTRIBUTE_GROUPS = {
    "colors": COLORS,
    "patterns_markings": PATTERNS_MARKINGS,
    "materials": MATERIALS,
    "reflectance": REFLECTANCE,
}
