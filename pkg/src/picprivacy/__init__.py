"""Image privacy prediction toolkit.

Predicts whether a shared image should be treated as public or private,
working from precomputed CNN layer activations and image tags.  Provides
softmax auto-annotation, bag-of-tags features, a kernel SVM trained by
sequential minimal optimization, the stratified evaluation protocol,
tag informativeness analytics, WordNet tag enrichment, and a GIST
visual baseline.
"""

__version__ = "0.1.0"

PUBLIC = "public"
PRIVATE = "private"
LABELS = (PUBLIC, PRIVATE)
