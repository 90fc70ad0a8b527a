#!/usr/bin/env python3
"""Minimal OpenAI-compatible /v1/embeddings server over sentence-transformers.

    python3 tools/embeddings_server.py --model all-MiniLM-L6-v2 --port 8090
    LARB_EMBEDDINGS_URL=http://127.0.0.1:8090/v1 ./build/tests/acceptance
"""

import argparse

import uvicorn
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel
from sentence_transformers import SentenceTransformer


class EmbeddingRequest(BaseModel):
    model: str | None = None
    input: list[str] | str


def make_app(model_name: str) -> FastAPI:
    model = SentenceTransformer(model_name)
    app = FastAPI()

    @app.post("/v1/embeddings")
    def embeddings(req: EmbeddingRequest):
        texts = [req.input] if isinstance(req.input, str) else req.input
        if not texts:
            raise HTTPException(400, "empty input")
        # Raw (unnormalized) vectors; the client computes cosine itself.
        vectors = model.encode(texts, convert_to_numpy=True)
        return {
            "object": "list",
            "model": model_name,
            "data": [
                {"object": "embedding", "index": i, "embedding": v.tolist()}
                for i, v in enumerate(vectors)
            ],
        }

    return app


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--model", default="all-MiniLM-L6-v2")
    ap.add_argument("--host", default="127.0.0.1")
    ap.add_argument("--port", type=int, default=8090)
    args = ap.parse_args()
    uvicorn.run(make_app(args.model), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
