#include <stdio.h>
#include <string.h>

#include "prefcons.h"

int main(void) {
    PrefconsFrame *frame = NULL;
    if (prefcons_frame_new("four", "p,q,r", "q\nr\np\n!p\n!r\nr | q\n", &frame) != PREFCONS_STATUS_OK) {
        fprintf(stderr, "frame: %s\n", prefcons_last_error());
        return 1;
    }
    PrefconsRelation *rel = NULL;
    if (prefcons_relation_new(frame, NULL, false, &rel) != PREFCONS_STATUS_OK) {
        return 2;
    }
    prefcons_frame_free(frame);

    bool holds = false;
    if (prefcons_entails(rel, "p\n!p\nq", "q", &holds) != PREFCONS_STATUS_OK || !holds) {
        return 3;
    }
    if (prefcons_entails(rel, "!r\nr | q", "q", &holds) != PREFCONS_STATUS_OK || holds) {
        return 4;
    }
    if (prefcons_entails(rel, "q", "q & (r", &holds) != PREFCONS_STATUS_SYNTAX) {
        return 5;
    }
    if (prefcons_last_error() == NULL || strstr(prefcons_last_error(), "position") == NULL) {
        return 6;
    }
    prefcons_relation_free(rel);
    printf("ok %s\n", prefcons_version());
    return 0;
}
