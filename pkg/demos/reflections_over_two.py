"""Parts over the arrow category 2 = {0 -> 1} and their reflections.

A part is a functor into the base. Discrete opfibrations are the closed parts
and discrete fibrations the open ones; every part has a best closed
approximation from above (reflection) and from below (coreflection).
"""
from bipolar import CLOSED, OPEN, classify_part, coreflect, reflect
from bipolar.fincat import arrow_category
from bipolar.parts import identity_part, object_part, sum_parts, tensor
from bipolar.presheaf import CO, CONTRA, Presheaf, elements

two = arrow_category()

parts = {
    "object 0": object_part(two, "0"),
    "object 1": object_part(two, "1"),
    "identity": identity_part(two),
    "0 + 1 + 1": sum_parts(object_part(two, "0"), sum_parts(object_part(two, "1"), object_part(two, "1"))),
}
print(f"{'part':12} {'kind':13} {'up':>8} {'down':>8} {'coreflect':>10}")
for name, p in parts.items():
    kind = classify_part(p).kind
    up = reflect(p, CLOSED).presheaf.sizes()
    down = reflect(p, OPEN).presheaf.sizes()
    core = coreflect(p, CLOSED).presheaf.sizes()
    print(f"{name:12} {kind:13} {str(up):>8} {str(down):>8} {str(core):>10}")

# a df and a dof pair into a plain set: the tensor counts glued element pairs
a = Presheaf(two, CONTRA, {"0": ["p", "q"], "1": ["b"]}, {"a": {"b": "p"}})
d = Presheaf(two, CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}})
ten = tensor(elements(a), elements(d))
print("\nten(A, D) has", ten.size, "classes:")
for i in range(ten.size):
    print("  represented by", ten.rep_pair(i))
