/* pipeline: grouping, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

void fn(){
  static const int t_5[41] = {49, 48, 48, 44, 50, 48, 48, 44, 51, 48, 48, 124, 52, 48, 48, 124, 53, 48, 48, 44, 54, 48, 48, 124, 55, 48, 48, 44, 56, 48, 48, 44, 57, 48, 48, 124, 49, 48, 48, 48, 0};
  int v_1 = 1;
  int v_2 = (-2147483648);
  int v_3 = 0;
  int v_4 = 0;
  int v_6 = 0;
  while ((v_1 > 0) && (v_6 < 41))
  {
    int const t_7 = t_5[v_6];
    int const t_8 = v_4;
    if ((t_7 >= 48) && (t_7 <= 57))
    {
      v_4 = (10 * t_8) + (t_7 - 48);
    }
    else
    {
      v_4 = 0;
      int const t_9 = v_3;
      int const t_10 = t_9 + t_8;
      if (t_7 == 44)
      {
        v_3 = t_10;
      }
      else
      {
        v_3 = 0;
        int const t_11 = v_2;
        int const t_12 = (t_11 > t_10 ? t_11 : t_10);
        if (t_7 == 124)
        {
          v_2 = t_12;
        }
        else
        {
          v_2 = (-2147483648);
          v_1--;
          printf("%d\n", t_12);
        }
      }
    }
    v_6++;
  }
}
