/*
 * Copyright 2026 The toricq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libtoricq.
 *
 * Every function returns a toricq_status. On failure the message of the
 * most recent error on the calling thread is available from
 * toricq_last_error(). Strings returned through `char **` out-parameters are
 * owned by the caller and must be released with toricq_free().
 */

#ifndef TORICQ_H
#define TORICQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TORICQ_API __declspec(dllexport)
#else
#define TORICQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum toricq_status {
    TORICQ_OK = 0,
    TORICQ_ERR_INVALID_ARGUMENT = 1,
    TORICQ_ERR_INVALID_DISTANCE = 2,
    TORICQ_ERR_INVALID_PROBABILITY = 3,
    TORICQ_ERR_INVALID_CHAIN_LENGTH = 4,
    TORICQ_ERR_NON_EMPTY_SYNDROME = 5,
    TORICQ_ERR_EMPTY_SYNDROME = 6,
    TORICQ_ERR_TOO_MANY_DEFECTS = 7,
    TORICQ_ERR_ODD_DEFECT_COUNT = 8,
    TORICQ_ERR_UNSUPPORTED_DISTANCE = 9,
    TORICQ_ERR_UNSUPPORTED_INPUT = 10,
    TORICQ_ERR_SHAPE_MISMATCH = 11,
    TORICQ_ERR_MISSING_CACHE = 12,
    TORICQ_ERR_VERSION_MISMATCH = 13,
    TORICQ_ERR_CORRUPT_FILE = 14,
    TORICQ_ERR_BUFFER_TOO_SMALL = 15,
    TORICQ_ERR_INDEX_OUT_OF_RANGE = 16,
    TORICQ_ERR_CONFIG_INVALID = 17,
    TORICQ_ERR_ARCHITECTURE_MISMATCH = 18,
    TORICQ_ERR_CHECKPOINT_INCOMPATIBLE = 19,
    TORICQ_ERR_OUT_OF_RANGE = 20,
    TORICQ_ERR_IO = 21,
    TORICQ_ERR_INTERNAL = 99
} toricq_status;

typedef enum toricq_decoder {
    TORICQ_DECODER_MWPM = 0,
    TORICQ_DECODER_DQN = 1,
    /* Minimal correction chains; only for single row/column chains. */
    TORICQ_DECODER_MCC = 2
} toricq_decoder;

/* A trained Q-network loaded from a checkpoint. */
typedef struct toricq_network toricq_network;

TORICQ_API const char *toricq_version(void);
TORICQ_API const char *toricq_status_name(int status);
TORICQ_API const char *toricq_last_error(void);
TORICQ_API void toricq_free(char *str);

/* Closed-form rates at distance d and error rate p, as JSON. */
TORICQ_API int toricq_analytic_json(int d, double p, char **out_json);

/* Fills defaults into a partial training config and validates it. */
TORICQ_API int toricq_training_config_resolve(const char *config_json, char **out_json);

/*
 * Trains with a JSON training config (unknown keys are rejected), writing
 * metrics.jsonl and checkpoints/ under run_dir. The summary names the final
 * checkpoint.
 */
TORICQ_API int toricq_train(const char *config_json, const char *run_dir, char **out_summary_json);

/* Loads a checkpoint; fails with TORICQ_ERR_CHECKPOINT_INCOMPATIBLE unless
 * it was written for distance d (d <= 0 accepts any). */
TORICQ_API int toricq_network_load(const char *path, int d, toricq_network **out);
TORICQ_API void toricq_network_free(toricq_network *net);
TORICQ_API int toricq_network_distance(const toricq_network *net, int *out_d);
TORICQ_API int toricq_network_info_json(const toricq_network *net, char **out_json);

/*
 * Noise models are named "depolarizing", "bitflip" or "biased"; p_rel is
 * read only for "biased". `net` may be NULL unless the decoder is DQN.
 */
TORICQ_API int toricq_evaluate_json(toricq_decoder decoder, const toricq_network *net, int d, const char *model,
                                    double p, double p_rel, int64_t n, uint64_t seed, int workers, char **out_json);

/* One row per rate; `provenance` (may be NULL) is emitted as "# " lines. */
TORICQ_API int toricq_sweep_csv(toricq_decoder decoder, const toricq_network *net, int d, const char *model,
                                const double *p_list, size_t p_count, double p_rel, int64_t n, uint64_t seed,
                                int workers, const char *provenance, char **out_csv);

/* n_samples == 0 enumerates every restricted chain. */
TORICQ_API int toricq_asymptotic_json(toricq_decoder decoder, const toricq_network *net, int d, uint64_t seed,
                                      int64_t n_samples, int workers, char **out_json);

TORICQ_API int toricq_paired_json(toricq_decoder decoder_a, const toricq_network *net_a, toricq_decoder decoder_b,
                                  const toricq_network *net_b, int d, const char *model, double p, double p_rel,
                                  int64_t n, uint64_t seed, int workers, char **out_json);

/*
 * Greedy decoding trace. With syndrome_json (two d x d 0/1 arrays named
 * "vertex" and "plaquette") that syndrome is decoded; with NULL an error is
 * drawn at depolarizing rate p from `seed`, and the verdict also checks the
 * homology of the residual.
 */
TORICQ_API int toricq_inspect_json(const toricq_network *net, const char *syndrome_json, uint64_t seed, double p,
                                   int cap, char **out_json);

#ifdef __cplusplus
}
#endif

#endif
