"""Idempotents as atoms, and the Karoubi envelope that splits them."""
from bipolar import atom_check, idempotent_representable, is_dedekind_cut, karoubi, splits
from bipolar.catalog import load_catalog
from bipolar.parts import idempotent_part
from bipolar.presheaf import CO, CONTRA

bases = load_catalog().bases
m = bases["{1,e}"]

print("e splits in {1,e}?", splits(m, "e") is not None)
k = karoubi(m).category
print("Karoubi envelope objects:", k.objects)
for a in k.objects:
    for b in k.objects:
        print(f"  |hom({a}, {b})| = {len(k.hom(a, b))}")

w = atom_check(idempotent_part(m, "e"))
print("\nthe idempotent part is an atom, witnessed by the pair", w.pair)
down_e = idempotent_representable(m, "e", CONTRA)
up_e = idempotent_representable(m, "e", CO)
print("(down e, up e) is a Dedekind cut:", is_dedekind_cut(down_e, up_e))

split = bases["split"]
print("\nin the category with a retract, e splits through", splits(split, "e"))
