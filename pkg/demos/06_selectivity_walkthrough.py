# Deciding selectivity for a genus of maximal orders, end to end.
#
#   python3 demos/06_selectivity_walkthrough.py
#
# The data: an odd prime degree p, the class group, the classes and
# splitting of the algebra-ramified primes, and flags for the degree-p
# extension (plus its index-p norm subgroup when it is abelian and
# everywhere unramified).  The decision rides on one subgroup containment.

from selectis import (
    ADMITS_ALL,
    ExtensionData,
    FiniteAbelianGroup,
    Frobenius,
    GlobalInstance,
    RamifiedPrime,
    decide_selectivity,
    global_embedding_count,
    sandwich_report,
    subgroup,
    type_group,
)

cl = FiniteAbelianGroup((3,))
norms = subgroup(cl, [])  # trivial subgroup: index 3, the unramified cubic class field
modeled = ExtensionData(
    galois=True, abelian=True, unramified_finite=True, unramified_real=True,
    norm_subgroup=norms,
)


def show(label, inst):
    print(f"--- {label}")
    report = decide_selectivity(inst)
    if not report.can_embed:
        print("  no embedding anywhere: a ramified prime splits")
        return
    tg = type_group(inst)
    print(f"  type group {tg.group.cyclic_orders or '(trivial)'}, {tg.type_number} types")
    print(f"  sandwich indices {report.sandwich.indices}")
    if report.selective:
        print(
            f"  SELECTIVE: {report.admitting_types.order} of {report.type_number} "
            f"types admit (proportion {report.proportion})"
        )
    else:
        assert report.admitting_types is ADMITS_ALL
        print("  not selective: every type admits the order")


# 1. the everywhere-unramified degree-3 extension inside the class field:
#    selectivity, with exactly one third of the types admitting
show("unramified abelian cubic, no algebra ramification",
     GlobalInstance(3, cl, (), modeled))

# 2. same shape but a non-galois extension: never selective
show("non-galois cubic",
     GlobalInstance(3, cl, (), ExtensionData(False, False, True, True, None)))

# 3. ramify the algebra at a prime whose class generates: the type group
#    collapses and the containment fails
show("algebra ramified at a generator class (inert there)",
     GlobalInstance(3, cl, (RamifiedPrime((1,), Frobenius.INERT),), modeled))

# 4. ramified prime that splits in the extension: no embedding at all
show("algebra ramified at a split prime",
     GlobalInstance(3, cl, (RamifiedPrime((0,), Frobenius.SPLIT),), modeled))

# the three-step norm-group sandwich behind case 1: the only strict
# inclusion is the last one, of index exactly p
report = sandwich_report(GlobalInstance(3, cl, (), modeled))
print("\nsandwich for case 1:")
for rung in (report.left, report.middle, report.right):
    print(f"  {rung.role.value}: index {rung.index_in_ambient} in the full group")

# the product formula: under maximal-order hypotheses every local factor
# is 1, so the global conjugacy count is 1
inst = GlobalInstance(3, cl, (), modeled, local_embedding_numbers=(1, 1, 1))
print("\nglobal embedding count:", global_embedding_count(inst).count)
