# Factoriality and ampleness criteria
