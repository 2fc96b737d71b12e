"""The desk-scale preorders every acceptance check runs over."""

from incidence.poset import parse_preorder

SUITE_DSL = {
    "C1": "elements: 1\n",
    "C2": "elements: 1 2\nrelations: 1<2\n",
    "C3": "elements: 1 2 3\nrelations: 1<2 2<3\n",
    "C4": "elements: 1 2 3 4\nrelations: 1<2 2<3 3<4\n",
    "C5": "elements: 1 2 3 4 5\nrelations: 1<2 2<3 3<4 4<5\n",
    "A3": "elements: 1 2 3\n",
    "D4": "elements: 0 a b 1\nrelations: 0<a 0<b a<1 b<1\n",
    "K22": "elements: 1 2 3 4\nrelations: 1<3 1<4 2<3 2<4\n",
    "M2": "elements: a b\nrelations: a<b b<a\n",
    "M3": "elements: a b c\nrelations: a<b b<c c<a\n",
    "P6": "elements: a b c\nrelations: a<b b<a a<c\n",
}


def suite():
    """Name -> Preorder, in a fixed order."""
    return {name: parse_preorder(text) for name, text in SUITE_DSL.items()}
