# Classifier, training, data and results systems
