# Tests de hurstlab
