# Hopf algebra data model, constructions and builtin catalog
