# Defect, rank and intersection invariants
