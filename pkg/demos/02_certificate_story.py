"""When no packing exists, the answer is a partition that proves it.

Two triangles sharing a vertex have 6 edges on 5 vertices. Two spanning
trees would need 8, and the packer's certificate pinpoints the shortfall:
splitting all the way to one-vertex classes leaves only 6 edges across,
fewer than 2 * (5 - 1). The exhaustive oracle confirms this is the worst
partition of all 52.
"""

from treepack import MultiGraph, density_margin, pack, quotient, verify_certificate

bowtie = MultiGraph(5, ((0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)))

result = pack(bowtie, 2)
print(f"verdict:     {result.verdict}")
certificate = result.certificate
print(f"certificate: {certificate}")

crossing = quotient(bowtie, certificate).m
bound = 2 * (certificate.num_classes - 1)
print(f"crossing:    {crossing} edges, bound {bound}")

ok, detail = verify_certificate(bowtie, certificate, 2)
print(f"verified:    {ok} ({detail})")

report = density_margin(bowtie, 2)
print(f"oracle:      margin {report.margin} at {report.witness}")
assert report.witness == certificate
