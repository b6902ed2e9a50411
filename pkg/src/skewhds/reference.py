"""Reference triple-intersection values the reproduction commands compare against.

Labels: P = Paley, DY(u) = Ding-Yuan, RT(a) = Ree-Tits image set.  Only the
multiplicities that were printed explicitly are listed for m = 5.
"""

LABELS = ("P", "DY(1)", "DY(-1)", "RT(1)", "RT(-1)")

# label -> (family, param sign); the param is the field element +1 or -1
LABEL_FAMILY = {
    "P": ("paley", None),
    "DY(1)": ("dy", 1),
    "DY(-1)": ("dy", -1),
    "RT(1)": ("rt", 1),
    "RT(-1)": ("rt", -1),
}

MIN_MAX = {
    5: {"P": (26, 33), "DY(1)": (23, 36), "DY(-1)": (24, 35), "RT(1)": (24, 35), "RT(-1)": (24, 35)},
    7: {"P": (261, 284), "DY(1)": (246, 300), "DY(-1)": (248, 297), "RT(1)": (250, 295), "RT(-1)": (249, 296)},
}

MULTIPLICITIES_M5 = {
    "DY(-1)": {24: 75, 25: 435, 26: 1155, 27: 2385, 35: 120},
    "RT(1)": {24: 75, 25: 330, 26: 1155, 27: 2535, 35: 105},
    "RT(-1)": {24: 90, 25: 330, 26: 1095, 27: 2655, 35: 120},
}
