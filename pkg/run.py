from curvature_structures import start



start()
