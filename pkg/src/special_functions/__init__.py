"""Complete elliptic integrals and the lambda_0 root"""
