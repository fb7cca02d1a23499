# Center, cocenter and exact sequence engines
