# Domain objects: samples, datasets, classifier parameters, memories, accuracy matrix
