#include <stdio.h>
#include <string.h>
#include "tripfact.h"

int main(void) {
    TfTriple *t = NULL;
    const char *text = "G: (1,2,3,4,5); (1,2,3)\nA: (1,2,3,4,5)\nB: (1,3)(2,5); (1,2)(3,5)\n";
    if (tf_triple_from_text(text, &t) != TF_STATUS_CODE_OK) return 1;
    TfClass c;
    if (tf_triple_classify(t, &c) != TF_STATUS_CODE_OK || c != TF_CLASS_NONDEGENERATE) return 2;
    char *json = NULL;
    if (tf_triple_report_json(t, &json) != TF_STATUS_CODE_OK) return 3;
    printf("%s\n", json);
    tf_string_free(json);
    tf_triple_free(t);

    TfGroup *g = NULL;
    if (tf_group_from_cycles("(1,2", &g) != TF_STATUS_CODE_PARSE) return 4;
    char *err = tf_last_error();
    if (err == NULL || strstr(err, "unclosed") == NULL) return 5;
    tf_string_free(err);
    return 0;
}
